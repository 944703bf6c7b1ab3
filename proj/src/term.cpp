#include "qfc/term.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "qfc/builders.hpp"

namespace qfc {

// --- angles --------------------------------------------------------------

Angle Angle::of(double v) {
  Angle a;
  a.value = v;
  return a;
}

Angle Angle::pi_frac(long long num, long long den) {
  if (den == 0) throw term_error("angle denominator is zero");
  if (den < 0) {
    den = -den;
    num = -num;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  Angle a;
  a.exact = true;
  a.num = num;
  a.den = den;
  a.value = M_PI * (double)num / (double)den;
  if (num == 0) a.den = 1;
  return a;
}

Angle Angle::negated() const {
  if (exact) return pi_frac(-num, den);
  return of(-value);
}

std::string Angle::text() const {
  if (exact) {
    if (num == 0) return "0";
    std::string sign = num < 0 ? "-" : "";
    long long n = num < 0 ? -num : num;
    if (n == 1 && den == 1) return sign + "pi";
    if (n == 1) return sign + "pi/" + std::to_string(den);
    if (den == 1) return sign + "pi*" + std::to_string(n);
    return sign + "pi*" + std::to_string(n) + "/" + std::to_string(den);
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// --- constructors ---------------------------------------------------------

static void require_bits(const std::string& r0, const char* who) {
  if (r0.empty()) throw term_error(std::string(who) + ": separator must be nonempty");
  for (char c : r0)
    if (c != '0' && c != '1') throw term_error(std::string(who) + ": separator must be over {0,1}");
  if (r0.size() > 16) throw term_error(std::string(who) + ": separator too wide");
}

static TermPtr leaf(TermKind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}

TermPtr t_ident() { return leaf(TermKind::Ident); }
TermPtr t_not() { return leaf(TermKind::Not); }
TermPtr t_swap() { return leaf(TermKind::Swap); }

TermPtr t_phase(Angle theta) {
  if (!std::isfinite(theta.value)) throw term_error("phase: angle must be finite");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Phase;
  t->theta = theta;
  return t;
}

TermPtr t_rot(Angle theta) {
  if (!std::isfinite(theta.value)) throw term_error("rot: angle must be finite");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Rot;
  t->theta = theta;
  return t;
}

TermPtr t_meas(int a) {
  if (a != 0 && a != 1) throw term_error("meas: bit must be 0 or 1");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Meas;
  t->bit = a;
  return t;
}

static TermPtr pair_node(TermKind k, TermPtr g, TermPtr h) {
  if (!g || !h) throw term_error("missing ground function");
  auto t = std::make_shared<Term>();
  t->kind = k;
  t->a = std::move(g);
  t->b = std::move(h);
  return t;
}

TermPtr t_compo(TermPtr g, TermPtr h) { return pair_node(TermKind::Compo, std::move(g), std::move(h)); }
TermPtr t_branch(TermPtr g, TermPtr h) { return pair_node(TermKind::Branch, std::move(g), std::move(h)); }

static TermPtr cfq_node(TermKind kind, std::size_t t, std::string r0, TermPtr d, TermPtr g,
                        TermPtr h, std::vector<PSel> p, std::vector<FSel> f) {
  require_bits(r0, "cfqrec");
  if (t < 1) throw term_error("cfqrec: t must be >= 1");
  if (!d || !g || !h) throw term_error("cfqrec: missing ground function");
  std::size_t want = std::size_t(1) << r0.size();
  if (p.size() != want || f.size() != want)
    throw term_error("cfqrec: p and f must have 2^{|r0|} entries");
  auto n = std::make_shared<Term>();
  n->kind = kind;
  n->t = t;
  n->r0 = std::move(r0);
  n->a = std::move(d);
  n->b = std::move(g);
  n->c = std::move(h);
  n->p = std::move(p);
  n->f = std::move(f);
  return n;
}

TermPtr t_cfqrec(std::size_t t, std::string r0, TermPtr d, TermPtr g, TermPtr h,
                 std::vector<PSel> p, std::vector<FSel> f) {
  return cfq_node(TermKind::CfqRec, t, std::move(r0), std::move(d), std::move(g), std::move(h),
                  std::move(p), std::move(f));
}

TermPtr t_cfqrec_inv(std::size_t t, std::string r0, TermPtr d, TermPtr g, TermPtr h,
                     std::vector<PSel> p, std::vector<FSel> f) {
  return cfq_node(TermKind::CfqRecInv, t, std::move(r0), std::move(d), std::move(g), std::move(h),
                  std::move(p), std::move(f));
}

TermPtr t_lcompo(std::string r0, TermPtr g) {
  require_bits(r0, "lcompo");
  if (!g) throw term_error("lcompo: missing ground function");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::LCompo;
  t->r0 = std::move(r0);
  t->a = std::move(g);
  return t;
}

TermPtr t_codeskip(bool plus, std::string r0, TermPtr g, TermPtr h) {
  require_bits(r0, "codeskip");
  auto t = pair_node(plus ? TermKind::CodeSkipPlus : TermKind::CodeSkipMinus, std::move(g),
                     std::move(h));
  const_cast<Term&>(*t).r0 = std::move(r0);
  return t;
}

TermPtr t_coderemove(std::string r0) {
  require_bits(r0, "coderemove");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::CodeRemove;
  t->r0 = std::move(r0);
  return t;
}

TermPtr t_coderep(std::string r0) {
  require_bits(r0, "coderep");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::CodeRep;
  t->r0 = std::move(r0);
  return t;
}

TermPtr t_codectrl(std::string r0, TermPtr f) {
  require_bits(r0, "codectrl");
  if (!f) throw term_error("codectrl: missing ground function");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::CodeCtrl;
  t->r0 = std::move(r0);
  t->a = std::move(f);
  return t;
}

TermPtr t_halfd(TermPtr g, TermPtr h) { return pair_node(TermKind::HalfD, std::move(g), std::move(h)); }

TermPtr t_midapp(std::size_t k, TermPtr h) {
  if (k < 1) throw term_error("midapp: k must be >= 1");
  if (!h) throw term_error("midapp: missing ground function");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::MidApp;
  t->k = k;
  t->a = std::move(h);
  return t;
}

static TermPtr dc_node(TermKind kind, std::size_t k, TermPtr g, TermPtr h, TermPtr p, FSel f1,
                       FSel f2) {
  if (k < 1) throw term_error("divconq: k must be >= 1");
  if (!g || !h || !p) throw term_error("divconq: missing ground function");
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->k = k;
  t->a = std::move(g);
  t->b = std::move(h);
  t->c = std::move(p);
  t->f1 = f1;
  t->f2 = f2;
  return t;
}

TermPtr t_divconq(std::size_t k, TermPtr g, TermPtr h, TermPtr p, FSel f1, FSel f2) {
  return dc_node(TermKind::DivConq, k, std::move(g), std::move(h), std::move(p), f1, f2);
}

TermPtr t_divconq_inv(std::size_t k, TermPtr g, TermPtr h, TermPtr p, FSel f1, FSel f2) {
  return dc_node(TermKind::DivConqInv, k, std::move(g), std::move(h), std::move(p), f1, f2);
}

TermPtr t_named(std::string name, std::vector<NamedArg> args, TermPtr expansion) {
  if (!expansion) throw term_error("named: missing expansion");
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Named;
  t->name = std::move(name);
  t->args = std::move(args);
  t->expansion = std::move(expansion);
  return t;
}

// --- parser ----------------------------------------------------------------

parse_error::parse_error(std::size_t line, std::size_t col, const std::string& msg)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(col) +
                         ": " + msg),
      line(line),
      col(col) {}

namespace {

struct Token {
  enum Kind { LParen, RParen, Atom, End } kind;
  std::string text;
  std::size_t line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = Token::End;
      return t;
    }
    char c = src_[pos_];
    if (c == '(') {
      advance();
      t.kind = Token::LParen;
      return t;
    }
    if (c == ')') {
      advance();
      t.kind = Token::RParen;
      return t;
    }
    t.kind = Token::Atom;
    while (pos_ < src_.size()) {
      c = src_[pos_];
      if (c == '(' || c == ')' || c == '#' || std::isspace((unsigned char)c)) break;
      t.text += c;
      advance();
    }
    return t;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace((unsigned char)c)) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

bool is_bits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c != '0' && c != '1') return false;
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  TermPtr parse() {
    TermPtr t = parse_term();
    if (cur_.kind != Token::End) fail("trailing input after term");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw parse_error(cur_.line, cur_.col, msg); }

  void bump() { cur_ = lex_.next(); }

  void expect(Token::Kind k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what);
    bump();
  }

  Angle parse_angle_text(const std::string& s) {
    std::string body = s;
    long long sign = 1;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
      if (body[0] == '-') sign = -1;
      body.erase(body.begin());
    }
    if (body.rfind("pi", 0) == 0) {
      std::string rest = body.substr(2);
      long long num = 1, den = 1;
      if (rest.empty()) {
      } else if (rest[0] == '/') {
        den = std::atoll(rest.c_str() + 1);
        if (den <= 0) fail("bad angle denominator in '" + s + "'");
      } else if (rest[0] == '*') {
        std::size_t slash = rest.find('/');
        num = std::atoll(rest.c_str() + 1);
        if (num == 0 && rest.substr(1) != "0") fail("bad angle in '" + s + "'");
        if (slash != std::string::npos) {
          den = std::atoll(rest.c_str() + slash + 1);
          if (den <= 0) fail("bad angle denominator in '" + s + "'");
        }
      } else {
        fail("bad angle '" + s + "'");
      }
      return Angle::pi_frac(sign * num, den);
    }
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end) fail("bad angle '" + s + "'");
    return Angle::of(v);
  }

  Angle parse_angle_arg() {
    if (cur_.kind != Token::Atom) fail("expected an angle");
    Angle a = parse_angle_text(cur_.text);
    bump();
    return a;
  }

  std::string parse_atom(const char* what) {
    if (cur_.kind != Token::Atom) fail(std::string("expected ") + what);
    std::string s = cur_.text;
    bump();
    return s;
  }

  long long parse_int(const std::string& s) {
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end) fail("expected an integer, got '" + s + "'");
    return v;
  }

  // Keyword arguments come as "key=value" in one atom or "key=" followed by
  // a parenthesized value.
  struct KeyVal {
    std::string key;
    std::string atom;  // empty when term set
    TermPtr term;
  };

  KeyVal parse_keyval() {
    if (cur_.kind != Token::Atom) fail("expected key=value");
    std::string t = cur_.text;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) fail("expected key=value, got '" + t + "'");
    KeyVal kv;
    kv.key = t.substr(0, eq);
    kv.atom = t.substr(eq + 1);
    bump();
    if (kv.atom.empty()) {
      if (cur_.kind != Token::LParen) fail("expected a value after '" + kv.key + "='");
      kv.term = parse_term();
    }
    return kv;
  }

  std::vector<PSel> parse_p_list(std::size_t want) {
    expect(Token::LParen, "'(' starting the p list");
    std::vector<PSel> out;
    while (cur_.kind == Token::Atom) {
      if (cur_.text == "i")
        out.push_back(PSel::Ident);
      else if (cur_.text == "hs")
        out.push_back(PSel::HalfSwap);
      else
        fail("p entries must be 'i' or 'hs'");
      bump();
    }
    expect(Token::RParen, "')' ending the p list");
    if (out.size() != want) fail("p list must have " + std::to_string(want) + " entries");
    return out;
  }

  std::vector<FSel> parse_f_list(std::size_t want) {
    expect(Token::LParen, "'(' starting the f list");
    std::vector<FSel> out;
    while (cur_.kind == Token::Atom) {
      if (cur_.text == "i")
        out.push_back(FSel::Ident);
      else if (cur_.text == "self")
        out.push_back(FSel::SelfRef);
      else
        fail("f entries must be 'i' or 'self'");
      bump();
    }
    expect(Token::RParen, "')' ending the f list");
    if (out.size() != want) fail("f list must have " + std::to_string(want) + " entries");
    return out;
  }

  FSel parse_fsel(const std::string& s) {
    if (s == "i") return FSel::Ident;
    if (s == "self") return FSel::SelfRef;
    fail("expected 'i' or 'self', got '" + s + "'");
  }

  TermPtr parse_cfq(TermKind kind) {
    std::size_t t = 0;
    std::string r0;
    TermPtr d, g, h;
    bool have_p = false, have_f = false;
    std::vector<PSel> p;
    std::vector<FSel> f;
    while (cur_.kind == Token::Atom) {
      // p and f lists need r0 first to know their width.
      if (cur_.text == "p=" || cur_.text == "f=") {
        if (r0.empty()) fail("r0 must come before p and f");
        bool is_p = cur_.text == "p=";
        bump();
        if (is_p) {
          p = parse_p_list(std::size_t(1) << r0.size());
          have_p = true;
        } else {
          f = parse_f_list(std::size_t(1) << r0.size());
          have_f = true;
        }
        continue;
      }
      KeyVal kv = parse_keyval();
      if (kv.key == "t")
        t = (std::size_t)parse_int(kv.atom);
      else if (kv.key == "r0") {
        if (!is_bits(kv.atom)) fail("r0 must be a bit string");
        r0 = kv.atom;
      } else if (kv.key == "d")
        d = kv.term ? kv.term : fail_term(kv);
      else if (kv.key == "g")
        g = kv.term ? kv.term : fail_term(kv);
      else if (kv.key == "h")
        h = kv.term ? kv.term : fail_term(kv);
      else
        fail("unknown cfqrec field '" + kv.key + "'");
    }
    if (t == 0) fail("cfqrec needs t=<n>");
    if (r0.empty()) fail("cfqrec needs r0=<bits>");
    if (!have_p || !have_f) fail("cfqrec needs p=(...) and f=(...)");
    try {
      return kind == TermKind::CfqRec
                 ? t_cfqrec(t, r0, d, g, h, std::move(p), std::move(f))
                 : t_cfqrec_inv(t, r0, d, g, h, std::move(p), std::move(f));
    } catch (const term_error& e) {
      fail(e.what());
    }
  }

  [[noreturn]] TermPtr fail_term(const KeyVal& kv) {
    fail("field '" + kv.key + "' needs a term value");
  }

  TermPtr parse_term() {
    expect(Token::LParen, "'('");
    if (cur_.kind != Token::Atom) fail("expected a constructor name");
    std::string head = cur_.text;
    std::size_t head_line = cur_.line, head_col = cur_.col;
    bump();

    auto done = [&](TermPtr t) {
      expect(Token::RParen, "')'");
      return t;
    };

    try {
      if (head == "id") return done(t_ident());
      if (head == "not") return done(t_not());
      if (head == "swap") return done(t_swap());
      if (head == "phase") return done(t_phase(parse_angle_arg()));
      if (head == "rot") return done(t_rot(parse_angle_arg()));
      if (head == "meas") return done(t_meas((int)parse_int(parse_atom("a bit"))));
      if (head == "compo") {
        TermPtr g = parse_term(), h = parse_term();
        return done(t_compo(g, h));
      }
      if (head == "branch") {
        TermPtr g = parse_term(), h = parse_term();
        return done(t_branch(g, h));
      }
      if (head == "cfqrec") return done(parse_cfq(TermKind::CfqRec));
      if (head == "cfqrecinv") return done(parse_cfq(TermKind::CfqRecInv));
      if (head == "lcompo") {
        KeyVal r = parse_keyval();
        if (r.key != "r0" || !is_bits(r.atom)) fail("lcompo needs r0=<bits>");
        KeyVal g = parse_keyval();
        if (g.key != "g" || !g.term) fail("lcompo needs g=(...)");
        return done(t_lcompo(r.atom, g.term));
      }
      if (head == "codeskip+" || head == "codeskip-") {
        KeyVal r = parse_keyval();
        if (r.key != "r0" || !is_bits(r.atom)) fail("codeskip needs r0=<bits>");
        KeyVal g = parse_keyval();
        if (g.key != "g" || !g.term) fail("codeskip needs g=(...)");
        KeyVal h = parse_keyval();
        if (h.key != "h" || !h.term) fail("codeskip needs h=(...)");
        return done(t_codeskip(head == "codeskip+", r.atom, g.term, h.term));
      }
      if (head == "coderemove" || head == "coderep") {
        KeyVal r = parse_keyval();
        if (r.key != "r0" || !is_bits(r.atom)) fail(head + " needs r0=<bits>");
        return done(head == "coderemove" ? t_coderemove(r.atom) : t_coderep(r.atom));
      }
      if (head == "codectrl") {
        KeyVal r = parse_keyval();
        if (r.key != "r0" || !is_bits(r.atom)) fail("codectrl needs r0=<bits>");
        KeyVal f = parse_keyval();
        if (f.key != "f" || !f.term) fail("codectrl needs f=(...)");
        return done(t_codectrl(r.atom, f.term));
      }
      if (head == "halfd") {
        TermPtr g = parse_term(), h = parse_term();
        return done(t_halfd(g, h));
      }
      if (head == "midapp") {
        KeyVal k = parse_keyval();
        if (k.key != "k") fail("midapp needs k=<n>");
        KeyVal h = parse_keyval();
        if (h.key != "h" || !h.term) fail("midapp needs h=(...)");
        return done(t_midapp((std::size_t)parse_int(k.atom), h.term));
      }
      if (head == "divconq" || head == "divconqinv") {
        std::size_t k = 0;
        TermPtr g, h, p;
        FSel f1 = FSel::Ident, f2 = FSel::Ident;
        bool have_f1 = false, have_f2 = false;
        while (cur_.kind == Token::Atom) {
          KeyVal kv = parse_keyval();
          if (kv.key == "k")
            k = (std::size_t)parse_int(kv.atom);
          else if (kv.key == "g")
            g = kv.term ? kv.term : fail_term(kv);
          else if (kv.key == "h")
            h = kv.term ? kv.term : fail_term(kv);
          else if (kv.key == "p")
            p = kv.term ? kv.term : fail_term(kv);
          else if (kv.key == "f1") {
            f1 = parse_fsel(kv.atom);
            have_f1 = true;
          } else if (kv.key == "f2") {
            f2 = parse_fsel(kv.atom);
            have_f2 = true;
          } else
            fail("unknown divconq field '" + kv.key + "'");
        }
        if (k == 0 || !g || !h || !p || !have_f1 || !have_f2)
          fail("divconq needs k=, g=, h=, p=, f1=, f2=");
        return done(head == "divconq" ? t_divconq(k, g, h, p, f1, f2)
                                      : t_divconq_inv(k, g, h, p, f1, f2));
      }
      if (head == "named") {
        std::string name = parse_atom("a builder name");
        std::vector<NamedArg> args;
        while (cur_.kind == Token::Atom || cur_.kind == Token::LParen) {
          NamedArg a;
          if (cur_.kind == Token::LParen) {
            a.is_term = true;
            a.term = parse_term();
          } else {
            a.atom = cur_.text;
            bump();
          }
          args.push_back(std::move(a));
        }
        TermPtr expansion = build_named(name, args);
        return done(t_named(name, std::move(args), expansion));
      }
    } catch (const parse_error&) {
      throw;
    } catch (const std::exception& e) {
      throw parse_error(head_line, head_col, e.what());
    }
    throw parse_error(head_line, head_col, "unknown constructor '" + head + "'");
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

TermPtr parse_term(std::string_view text) { return Parser(text).parse(); }

// --- render -----------------------------------------------------------------

namespace {

void render_to(const Term& t, std::string& out);

void render_child(const TermPtr& t, std::string& out) {
  out += ' ';
  render_to(*t, out);
}

void render_to(const Term& t, std::string& out) {
  switch (t.kind) {
    case TermKind::Ident: out += "(id)"; return;
    case TermKind::Not: out += "(not)"; return;
    case TermKind::Swap: out += "(swap)"; return;
    case TermKind::Phase: out += "(phase " + t.theta.text() + ")"; return;
    case TermKind::Rot: out += "(rot " + t.theta.text() + ")"; return;
    case TermKind::Meas: out += "(meas " + std::to_string(t.bit) + ")"; return;
    case TermKind::Compo:
    case TermKind::Branch:
    case TermKind::HalfD:
      out += t.kind == TermKind::Compo ? "(compo" : t.kind == TermKind::Branch ? "(branch" : "(halfd";
      render_child(t.a, out);
      render_child(t.b, out);
      out += ')';
      return;
    case TermKind::CfqRec:
    case TermKind::CfqRecInv: {
      out += t.kind == TermKind::CfqRec ? "(cfqrec" : "(cfqrecinv";
      out += " t=" + std::to_string(t.t) + " r0=" + t.r0 + " d=";
      render_to(*t.a, out);
      out += " g=";
      render_to(*t.b, out);
      out += " h=";
      render_to(*t.c, out);
      out += " p=(";
      for (std::size_t i = 0; i < t.p.size(); ++i) {
        if (i) out += ' ';
        out += t.p[i] == PSel::Ident ? "i" : "hs";
      }
      out += ") f=(";
      for (std::size_t i = 0; i < t.f.size(); ++i) {
        if (i) out += ' ';
        out += t.f[i] == FSel::Ident ? "i" : "self";
      }
      out += "))";
      return;
    }
    case TermKind::LCompo:
      out += "(lcompo r0=" + t.r0 + " g=";
      render_to(*t.a, out);
      out += ')';
      return;
    case TermKind::CodeSkipPlus:
    case TermKind::CodeSkipMinus:
      out += t.kind == TermKind::CodeSkipPlus ? "(codeskip+" : "(codeskip-";
      out += " r0=" + t.r0 + " g=";
      render_to(*t.a, out);
      out += " h=";
      render_to(*t.b, out);
      out += ')';
      return;
    case TermKind::CodeRemove: out += "(coderemove r0=" + t.r0 + ")"; return;
    case TermKind::CodeRep: out += "(coderep r0=" + t.r0 + ")"; return;
    case TermKind::CodeCtrl:
      out += "(codectrl r0=" + t.r0 + " f=";
      render_to(*t.a, out);
      out += ')';
      return;
    case TermKind::MidApp:
      out += "(midapp k=" + std::to_string(t.k) + " h=";
      render_to(*t.a, out);
      out += ')';
      return;
    case TermKind::DivConq:
    case TermKind::DivConqInv:
      out += t.kind == TermKind::DivConq ? "(divconq" : "(divconqinv";
      out += " k=" + std::to_string(t.k) + " g=";
      render_to(*t.a, out);
      out += " h=";
      render_to(*t.b, out);
      out += " p=";
      render_to(*t.c, out);
      out += " f1=";
      out += t.f1 == FSel::Ident ? "i" : "self";
      out += " f2=";
      out += t.f2 == FSel::Ident ? "i" : "self";
      out += ')';
      return;
    case TermKind::Named:
      out += "(named " + t.name;
      for (const auto& a : t.args) {
        out += ' ';
        if (a.is_term)
          render_to(*a.term, out);
        else
          out += a.atom;
      }
      out += ')';
      return;
  }
  throw term_error("render: unknown kind");
}

}  // namespace

std::string render(const Term& t) {
  std::string out;
  render_to(t, out);
  return out;
}

// --- validation ---------------------------------------------------------------

bool Diagnostics::ok() const {
  for (const auto& d : items)
    if (d.severity == Severity::Error) return false;
  return true;
}

bool contains_meas(const Term& t) {
  if (t.kind == TermKind::Meas) return true;
  if (t.kind == TermKind::Named) return contains_meas(*t.expansion);
  for (const TermPtr* c : {&t.a, &t.b, &t.c})
    if (*c && contains_meas(**c)) return true;
  return false;
}

namespace {

struct ValidateCtx {
  Diagnostics* out;
  bool in_cfq_d = false;       // inside the d slot of some CfqRec
  bool in_dc_p = false;        // inside the p slot of some DivConq
  bool in_dc_ground = false;   // inside any ground slot of some DivConq
  bool skip_allowed = false;   // inside a d or h slot of some CfqRec
};

void walk(const Term& t, const std::string& path, ValidateCtx cx) {
  auto err = [&](const char* rule, const std::string& msg) {
    cx.out->items.push_back({Severity::Error, rule, path, msg});
  };

  switch (t.kind) {
    case TermKind::Meas:
      cx.out->measurement_free = false;
      if (cx.in_cfq_d) err("meas-in-d", "measurement inside a cfqrec d slot");
      if (cx.in_dc_p) err("meas-in-p", "measurement inside a divconq p slot");
      return;
    case TermKind::CodeSkipPlus:
    case TermKind::CodeSkipMinus:
      if (!cx.skip_allowed)
        err("codeskip-placement", "code skipping outside the d/h slots of a recursion");
      break;
    case TermKind::DivConq:
    case TermKind::DivConqInv:
      if (cx.in_dc_ground) err("dc-in-dc", "divide-and-conquer nested inside a ground slot");
      break;
    default: break;
  }

  switch (t.kind) {
    case TermKind::Compo:
    case TermKind::Branch:
    case TermKind::HalfD: {
      ValidateCtx sub = cx;
      walk(*t.a, path + "/g", sub);
      walk(*t.b, path + "/h", sub);
      return;
    }
    case TermKind::CodeSkipPlus:
    case TermKind::CodeSkipMinus: {
      ValidateCtx sub = cx;
      walk(*t.a, path + "/g", sub);
      walk(*t.b, path + "/h", sub);
      return;
    }
    case TermKind::CfqRec:
    case TermKind::CfqRecInv: {
      ValidateCtx d = cx;
      d.in_cfq_d = true;
      d.skip_allowed = true;
      walk(*t.a, path + "/d", d);
      ValidateCtx g = cx;
      walk(*t.b, path + "/g", g);
      ValidateCtx h = cx;
      h.skip_allowed = true;
      walk(*t.c, path + "/h", h);
      return;
    }
    case TermKind::LCompo:
    case TermKind::CodeCtrl:
    case TermKind::MidApp:
      walk(*t.a, path + (t.kind == TermKind::MidApp ? "/h" : "/g"), cx);
      return;
    case TermKind::DivConq:
    case TermKind::DivConqInv: {
      ValidateCtx g = cx;
      g.in_dc_ground = true;
      walk(*t.a, path + "/g", g);
      walk(*t.b, path + "/h", g);
      ValidateCtx p = g;
      p.in_dc_p = true;
      walk(*t.c, path + "/p", p);
      return;
    }
    case TermKind::Named:
      walk(*t.expansion, path + "/" + t.name, cx);
      return;
    default: return;
  }
}

}  // namespace

Diagnostics validate(const Term& t) {
  Diagnostics d;
  walk(t, "", ValidateCtx{&d});
  return d;
}

// --- complexity ----------------------------------------------------------------

std::size_t complexity(const Term& t) {
  if (t.kind == TermKind::Named) return complexity(*t.expansion);
  std::size_t n = 1;
  for (const TermPtr* c : {&t.a, &t.b, &t.c})
    if (*c) n += complexity(**c);
  return n;
}

// --- inversion -------------------------------------------------------------------

TermPtr invert(const Term& t) {
  switch (t.kind) {
    case TermKind::Ident: return t_ident();
    case TermKind::Not: return t_not();
    case TermKind::Swap: return t_swap();
    case TermKind::Phase: return t_phase(t.theta.negated());
    case TermKind::Rot: return t_rot(t.theta.negated());
    case TermKind::Meas: throw term_error("not-invertible: term contains a measurement");
    case TermKind::Compo: return t_compo(invert(*t.b), invert(*t.a));
    case TermKind::Branch: return t_branch(invert(*t.a), invert(*t.b));
    case TermKind::CfqRec:
    case TermKind::CfqRecInv:
      if (contains_meas(t)) throw term_error("not-invertible: term contains a measurement");
      return t.kind == TermKind::CfqRec ? t_cfqrec_inv(t.t, t.r0, t.a, t.b, t.c, t.p, t.f)
                                        : t_cfqrec(t.t, t.r0, t.a, t.b, t.c, t.p, t.f);
    case TermKind::LCompo: return t_lcompo(t.r0, invert(*t.a));
    case TermKind::CodeSkipPlus: return t_codeskip(true, t.r0, invert(*t.a), invert(*t.b));
    case TermKind::CodeSkipMinus: return t_codeskip(false, t.r0, invert(*t.a), invert(*t.b));
    case TermKind::CodeRemove: return t_coderep(t.r0);
    case TermKind::CodeRep: return t_coderemove(t.r0);
    case TermKind::CodeCtrl: return t_codectrl(t.r0, invert(*t.a));
    case TermKind::HalfD: return t_halfd(invert(*t.a), invert(*t.b));
    case TermKind::MidApp: return t_midapp(t.k, invert(*t.a));
    case TermKind::DivConq:
    case TermKind::DivConqInv:
      if (contains_meas(t)) throw term_error("not-invertible: term contains a measurement");
      return t.kind == TermKind::DivConq ? t_divconq_inv(t.k, t.a, t.b, t.c, t.f1, t.f2)
                                         : t_divconq(t.k, t.a, t.b, t.c, t.f1, t.f2);
    case TermKind::Named: return invert(*t.expansion);
  }
  throw term_error("invert: unknown kind");
}

}  // namespace qfc
