#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qfc {

// Rotation/phase angle. Angles written as rational multiples of pi keep the
// exact fraction so rendering is canonical; anything else is a plain double.
struct Angle {
  double value = 0.0;
  bool exact = false;
  long long num = 0;
  long long den = 1;

  static Angle of(double v);
  static Angle pi_frac(long long num, long long den);
  Angle negated() const;
  std::string text() const;
  bool operator==(const Angle&) const = default;
};

enum class TermKind : std::uint8_t {
  Ident,
  Phase,
  Rot,
  Not,
  Swap,
  Meas,
  Compo,
  Branch,
  CfqRec,
  CfqRecInv,  // evaluator-native inverse of CfqRec (same slots)
  LCompo,
  CodeSkipPlus,
  CodeSkipMinus,
  CodeRemove,
  CodeRep,
  CodeCtrl,
  HalfD,
  MidApp,
  DivConq,
  DivConqInv,  // evaluator-native inverse of DivConq
  Named,
};

enum class PSel : std::uint8_t { Ident, HalfSwap };
enum class FSel : std::uint8_t { Ident, SelfRef };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// One argument of a named builder: a raw atom (the builder interprets it as
// int, angle, bit string or real) or a sub-term.
struct NamedArg {
  bool is_term = false;
  std::string atom;
  TermPtr term;
};

struct Term {
  TermKind kind = TermKind::Ident;

  Angle theta;      // Phase, Rot
  int bit = 0;      // Meas
  std::string r0;   // code-family constructors
  std::size_t t = 1;  // CfqRec threshold
  std::size_t k = 1;  // MidApp, DivConq width

  TermPtr a, b, c;  // children: Compo/Branch(a,b) = (g,h); CfqRec(a,b,c) =
                    // (d,g,h); LCompo/CodeCtrl(a); CodeSkip(a,b) = (g,h);
                    // HalfD(a,b); MidApp(a) = h; DivConq(a,b,c) = (g,h,p)

  std::vector<PSel> p;  // CfqRec: 2^{|r0|} entries indexed by section value
  std::vector<FSel> f;  // CfqRec: same indexing
  FSel f1 = FSel::Ident, f2 = FSel::Ident;  // DivConq

  std::string name;             // Named
  std::vector<NamedArg> args;   // Named
  TermPtr expansion;            // Named: pre-resolved builder output
};

struct term_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Constructors (validate parameter invariants, throw term_error).
TermPtr t_ident();
TermPtr t_phase(Angle theta);
TermPtr t_rot(Angle theta);
TermPtr t_not();
TermPtr t_swap();
TermPtr t_meas(int a);
TermPtr t_compo(TermPtr g, TermPtr h);
TermPtr t_branch(TermPtr g, TermPtr h);
TermPtr t_cfqrec(std::size_t t, std::string r0, TermPtr d, TermPtr g, TermPtr h,
                 std::vector<PSel> p, std::vector<FSel> f);
TermPtr t_cfqrec_inv(std::size_t t, std::string r0, TermPtr d, TermPtr g, TermPtr h,
                     std::vector<PSel> p, std::vector<FSel> f);
TermPtr t_lcompo(std::string r0, TermPtr g);
TermPtr t_codeskip(bool plus, std::string r0, TermPtr g, TermPtr h);
TermPtr t_coderemove(std::string r0);
TermPtr t_coderep(std::string r0);
TermPtr t_codectrl(std::string r0, TermPtr f);
TermPtr t_halfd(TermPtr g, TermPtr h);
TermPtr t_midapp(std::size_t k, TermPtr h);
TermPtr t_divconq(std::size_t k, TermPtr g, TermPtr h, TermPtr p, FSel f1, FSel f2);
TermPtr t_divconq_inv(std::size_t k, TermPtr g, TermPtr h, TermPtr p, FSel f1, FSel f2);
TermPtr t_named(std::string name, std::vector<NamedArg> args, TermPtr expansion);

// --- concrete syntax ---------------------------------------------------

struct parse_error : std::runtime_error {
  parse_error(std::size_t line, std::size_t col, const std::string& msg);
  std::size_t line, col;
};

TermPtr parse_term(std::string_view text);
std::string render(const Term& t);
inline std::string render(const TermPtr& t) { return render(*t); }

// --- validation ---------------------------------------------------------

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity;
  std::string rule;
  std::string path;
  std::string message;
};

struct Diagnostics {
  std::vector<Diagnostic> items;
  bool measurement_free = true;
  bool ok() const;  // no Error entries
};

Diagnostics validate(const Term& t);
inline Diagnostics validate(const TermPtr& t) { return validate(*t); }

// Constructor-node count of the construction history; Named counts as its
// expansion.
std::size_t complexity(const Term& t);
inline std::size_t complexity(const TermPtr& t) { return complexity(*t); }

// Structural inverse; throws term_error("not-invertible") on measurements.
TermPtr invert(const Term& t);
inline TermPtr invert(const TermPtr& t) { return invert(*t); }

bool contains_meas(const Term& t);

}  // namespace qfc
