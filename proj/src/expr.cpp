#include "qhecke/expr.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <optional>

#include "qhecke/appell.hpp"
#include "qhecke/hecke.hpp"
#include "qhecke/hypergeom.hpp"
#include "qhecke/theta.hpp"

namespace qhecke {

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.value != b.value || a.text != b.text) return false;
  if (a.children.size() != b.children.size() || a.groups.size() != b.groups.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!(*a.children[i] == *b.children[i])) return false;
  for (std::size_t g = 0; g < a.groups.size(); ++g) {
    if (a.groups[g].size() != b.groups[g].size()) return false;
    for (std::size_t i = 0; i < a.groups[g].size(); ++i)
      if (!(*a.groups[g][i] == *b.groups[g][i])) return false;
  }
  return true;
}

namespace {

// ---------------------------------------------------------------------------
// Argument access

std::optional<Monomial> fold(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Number:
      return Monomial::scalar(e.value);
    case NodeKind::Var:
      return Monomial::q();
    case NodeKind::Neg: {
      auto c = fold(*e.children[0]);
      if (!c) return std::nullopt;
      return -*c;
    }
    case NodeKind::Add:
    case NodeKind::Sub: {
      auto l = fold(*e.children[0]), r = fold(*e.children[1]);
      if (!l || !r) return std::nullopt;
      Monomial rr = e.kind == NodeKind::Sub ? -*r : *r;
      if (l->is_zero()) return rr;
      if (rr.is_zero()) return l;
      if (l->exp != rr.exp) return std::nullopt;
      return Monomial{l->coeff + rr.coeff, l->exp};
    }
    case NodeKind::Mul: {
      auto l = fold(*e.children[0]), r = fold(*e.children[1]);
      if (!l || !r) return std::nullopt;
      return *l * *r;
    }
    case NodeKind::Div: {
      auto l = fold(*e.children[0]), r = fold(*e.children[1]);
      if (!l || !r) return std::nullopt;
      if (r->is_zero()) fail(ErrorKind::ZeroSeries, "division by zero");
      return *l / *r;
    }
    case NodeKind::Pow: {
      auto b = fold(*e.children[0]);
      if (!b) return std::nullopt;
      if (is_integer(e.value)) return b->pow(to_int64(e.value));
      return b->pow(e.value);
    }
    default:
      return std::nullopt;
  }
}

struct Args {
  const Expr& call;

  const Expr& at(std::size_t g, std::size_t i) const { return *call.groups[g][i]; }

  Monomial mono(std::size_t g, std::size_t i) const {
    auto m = fold(at(g, i));
    if (!m) fail(ErrorKind::InvalidArgument, "argument '" + to_string(at(g, i)) + "' is not a monomial");
    return *m;
  }
  Rational rat(std::size_t g, std::size_t i) const {
    Monomial m = mono(g, i);
    if (!m.is_zero() && m.exp != 0)
      fail(ErrorKind::InvalidArgument, "argument '" + to_string(at(g, i)) + "' is not a number");
    return m.coeff;
  }
  long integer(std::size_t g, std::size_t i) const {
    Rational r = rat(g, i);
    if (!is_integer(r)) fail(ErrorKind::InvalidArgument, "argument '" + to_string(at(g, i)) + "' is not an integer");
    return static_cast<long>(to_int64(r));
  }
  HeckeParams params() const { return HeckeParams{integer(0, 0), integer(0, 1), integer(0, 2)}; }
  const std::string& str(std::size_t g, std::size_t i) const { return at(g, i).text; }
};

using Eval = std::function<QSeries(const Args&, const Rational&)>;

struct Builder {
  BuilderInfo info;
  std::vector<std::vector<std::size_t>> shapes;
  Eval eval;
  // Which arguments must be strings (group, index); everything else is an
  // expression or the symbol inf.
  std::vector<std::pair<std::size_t, std::size_t>> strings;
};

HeckeCall hecke_call(const Args& a, HeckeKind kind) {
  return HeckeCall{a.params(), a.mono(1, 0), a.mono(1, 1), a.mono(2, 0), kind};
}

NamedSum named(const std::string& id) {
  auto s = named_sum_from_string(id);
  if (!s) fail(ErrorKind::InvalidArgument, "unknown named sum '" + id + "'");
  return *s;
}

const std::map<std::string, Builder>& table() {
  static const std::map<std::string, Builder> t = [] {
    std::map<std::string, Builder> m;
    auto add = [&](std::string name, std::string sig, std::string summary, std::vector<std::vector<std::size_t>> shapes,
                   Eval eval, std::vector<std::pair<std::size_t, std::size_t>> strings = {}) {
      m[name] = Builder{BuilderInfo{name, sig, summary}, std::move(shapes), std::move(eval), std::move(strings)};
    };
    add("f", "f(a,b,c; x, y; nome)", "type I double sum", {{3, 2, 1}},
        [](const Args& a, const Rational& N) { return eval_hecke(hecke_call(a, HeckeKind::TypeI), N); });
    add("g", "g(a,b,c; x, y; nome)", "type II double sum", {{3, 2, 1}},
        [](const Args& a, const Rational& N) { return eval_hecke(hecke_call(a, HeckeKind::TypeII), N); });
    add("j", "j(x; nome)", "theta function", {{1, 1}},
        [](const Args& a, const Rational& N) { return theta(a.mono(0, 0), a.mono(1, 0), N); });
    add("m", "m(x, z; nome)", "Appell-Lerch sum", {{2, 1}},
        [](const Args& a, const Rational& N) { return appell_m(a.mono(0, 0), a.mono(0, 1), a.mono(1, 0), N); });
    add("J", "J(a, m)", "j(q^a; q^m)", {{2}},
        [](const Args& a, const Rational& N) { return big_j(a.integer(0, 0), a.integer(0, 1), N); });
    add("Jbar", "Jbar(a, m)", "j(-q^a; q^m)", {{2}},
        [](const Args& a, const Rational& N) { return big_jbar(a.integer(0, 0), a.integer(0, 1), N); });
    add("Jm", "Jm(m)", "(q^m; q^m)_inf", {{1}}, [](const Args& a, const Rational& N) { return big_jm(a.integer(0, 0), N); });
    add("poch", "poch(x; nome; n|inf)", "q-Pochhammer symbol", {{1, 1, 1}}, [](const Args& a, const Rational& N) {
      if (a.at(2, 0).kind == NodeKind::Symbol) return poch_inf(a.mono(0, 0), a.mono(1, 0), N);
      long n = a.integer(2, 0);
      if (n < 0) fail(ErrorKind::InvalidArgument, "poch length must be >= 0");
      return poch_finite(a.mono(0, 0), a.mono(1, 0), n, Order(N));
    });
    add("sum", "sum(\"id\")", "q-hypergeometric sum from the catalog", {{1}},
        [](const Args& a, const Rational& N) { return eval_named_sum(named(a.str(0, 0)), N); }, {{0, 0}});
    add("tri", "tri(\"spec\")", "triangular double sum", {{1}},
        [](const Args& a, const Rational& N) { return eval_triangular_sum(parse_triangular_spec(a.str(0, 0)), N); },
        {{0, 0}});
    add("ptheta", "ptheta(a, b)", "sum_{n>=1} (-1)^n q^{a n^2 + b n}", {{2}},
        [](const Args& a, const Rational& N) { return partial_theta(a.rat(0, 0), a.rat(0, 1), N); });
    add("psi", "psi()", "third-order mock theta psi(q)", {{}}, [](const Args&, const Rational& N) { return mock_psi(N); });
    add("mu", "mu()", "mu(q^3) by its Appell-Lerch relation", {{}},
        [](const Args&, const Rational& N) { return mock_mu3(N); });
    add("mu_series", "mu_series()", "mu(q^3) by its q-series", {{}},
        [](const Args&, const Rational& N) { return mu_series(N); });
    add("phi", "phi()", "sixth-order mock theta phi(q) = 2m(q,-1;q^3)", {{}},
        [](const Args&, const Rational& N) { return mock_phi(N); });
    add("sigma", "sigma()", "sigma(q)", {{}}, [](const Args&, const Rational& N) { return sigma_series(N); });
    add("theta2", "theta2()", "Theta_2(q)", {{}}, [](const Args&, const Rational& N) { return theta2_series(N); });
    add("G", "G(a,b,c; x, y, z1, z0; nome)", "Appell-Lerch part of the general f expansion", {{3, 4, 1}},
        [](const Args& a, const Rational& N) {
          return G_abc(a.params(), a.mono(1, 0), a.mono(1, 1), a.mono(1, 2), a.mono(1, 3), a.mono(2, 0), N);
        });
    add("theta", "theta(a,b,c; x, y; nome[; fterms])", "theta part of the general f expansion",
        {{3, 2, 1}, {3, 2, 1, 1}}, [](const Args& a, const Rational& N) {
          std::optional<long> nf;
          if (a.call.groups.size() == 4) nf = a.integer(3, 0);
          return theta_abc(a.params(), a.mono(1, 0), a.mono(1, 1), a.mono(2, 0), N, nf);
        });
    add("f121", "f121(x, y; nome)", "Appell-Lerch form of f(1,2,1; x, y; nome)", {{2, 1}},
        [](const Args& a, const Rational& N) { return f121_rhs(a.mono(0, 0), a.mono(0, 1), a.mono(1, 0), N); });
    add("f131", "f131(x, y; nome; l)", "Appell-Lerch form of f(1,3,1; x, y; nome)", {{2, 1, 1}},
        [](const Args& a, const Rational& N) {
          return f131_rhs(a.mono(0, 0), a.mono(0, 1), a.mono(1, 0), a.integer(2, 0), N);
        });
    add("fshift", "fshift(a,b,c; x, y; nome; l, k)", "shifted f plus its theta corrections", {{3, 2, 1, 2}},
        [](const Args& a, const Rational& N) {
          return f_shift_rhs(hecke_call(a, HeckeKind::TypeI), a.integer(3, 0), a.integer(3, 1), N);
        });
    add("gshift", "gshift(a,b,c; x, y; nome; l, k)", "shifted g plus its sg-weighted corrections", {{3, 2, 1, 2}},
        [](const Args& a, const Rational& N) {
          return g_shift_rhs(hecke_call(a, HeckeKind::TypeII), a.integer(3, 0), a.integer(3, 1), N);
        });
    add("gshift_printed", "gshift_printed(a,b,c; x, y; nome; l, k)",
        "g shift as printed: sg(0) = -1 and no k correction", {{3, 2, 1, 2}}, [](const Args& a, const Rational& N) {
          return g_shift_rhs(hecke_call(a, HeckeKind::TypeII), a.integer(3, 0), a.integer(3, 1), N, true, false);
        });
    add("kron", "kron(x, y; nome)", "product side of Kronecker's identity", {{2, 1}},
        [](const Args& a, const Rational& N) { return kronecker_eval(a.mono(0, 0), a.mono(0, 1), a.mono(1, 0), N); });
    return m;
  }();
  return t;
}

// ---------------------------------------------------------------------------
// Parser

std::shared_ptr<Expr> node(NodeKind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

ExprPtr binary(NodeKind k, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->children = {std::move(l), std::move(r)};
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip();
    if (pos_ != s_.size()) error({"operator", "end of input"}, "unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void error(std::vector<std::string> expected, const std::string& msg, std::optional<std::size_t> at = {}) {
    std::size_t off = at.value_or(pos_);
    std::string what = msg + " at offset " + std::to_string(off) + "; expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) what += (i ? ", " : "") + expected[i];
    throw ParseFailure(off, std::move(expected), what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c, std::vector<std::string> expected) {
    if (!accept(c))
      error(std::move(expected), pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end");
  }

  std::string digits() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }
  std::string ident() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  ExprPtr expr() {
    ExprPtr l = term();
    while (true) {
      if (accept('+')) l = binary(NodeKind::Add, l, term());
      else if (accept('-')) l = binary(NodeKind::Sub, l, term());
      else return l;
    }
  }

  ExprPtr term() {
    ExprPtr l = unary();
    while (true) {
      if (accept('*')) l = binary(NodeKind::Mul, l, unary());
      else if (accept('/')) l = binary(NodeKind::Div, l, unary());
      else return l;
    }
  }

  ExprPtr unary() {
    if (accept('-')) {
      auto e = node(NodeKind::Neg);
      e->children = {unary()};
      return e;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!accept('^')) return base;
    auto e = node(NodeKind::Pow);
    e->children = {base};
    e->value = exponent();
    return e;
  }

  Rational exponent() {
    if (accept('{')) {
      Rational r = rational();
      expect('}', {"}"});
      return r;
    }
    if (accept('(')) {
      Rational r = rational();
      expect(')', {")"});
      return r;
    }
    bool neg = accept('-');
    std::string d = digits();
    if (d.empty()) error({"integer", "{rational}"}, "bad exponent");
    Rational r = parse_rational(d);
    return neg ? Rational(-r) : r;
  }

  Rational rational() {
    bool neg = accept('-');
    if (!neg) accept('+');
    std::string p = digits();
    if (p.empty()) error({"integer"}, "bad rational");
    std::string text = p;
    if (accept('/')) {
      std::string r = digits();
      if (r.empty() || r.find_first_not_of('0') == std::string::npos) error({"nonzero integer"}, "bad denominator");
      text += "/" + r;
    }
    Rational v = parse_rational(text);
    return neg ? Rational(-v) : v;
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= s_.size()) error({"integer", "q", "builder", "("}, "unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto e = node(NodeKind::Number);
      e->value = parse_rational(digits());
      return e;
    }
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')', {")", "operator"});
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      std::string name = ident();
      if (!peek('(')) {
        if (name == "q") return node(NodeKind::Var);
        error({"("}, "'" + name + "' must be called", at + name.size());
      }
      return call(name, at);
    }
    error({"integer", "q", "builder", "("}, "unexpected '" + std::string(1, c) + "'");
  }

  ExprPtr arg(bool want_string) {
    skip();
    std::size_t at = pos_;
    if (accept('"')) {
      std::size_t b = pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
      if (pos_ >= s_.size()) error({"\""}, "unterminated string");
      auto e = node(NodeKind::String);
      e->text = std::string(s_.substr(b, pos_ - b));
      ++pos_;
      if (!want_string) error({"expression"}, "string argument not allowed here", at);
      return e;
    }
    if (want_string) error({"\"string\""}, "expected a quoted argument");
    std::size_t save = pos_;
    if (ident() == "inf" && !peek('(')) {
      auto e = node(NodeKind::Symbol);
      e->text = "inf";
      return e;
    }
    pos_ = save;
    return expr();
  }

  ExprPtr call(const std::string& name, std::size_t at) {
    const auto& tab = table();
    auto it = tab.find(name);
    if (it == tab.end()) error({"builder name"}, "unknown builder '" + name + "'", at);
    const Builder& b = it->second;
    expect('(', {"("});
    auto e = node(NodeKind::Call);
    e->text = name;
    auto is_string = [&](std::size_t g, std::size_t i) {
      for (auto [sg, si] : b.strings)
        if (sg == g && si == i) return true;
      return false;
    };
    std::vector<std::size_t> arg_offsets;
    if (!peek(')')) {
      while (true) {
        std::vector<ExprPtr> group;
        while (true) {
          skip();
          arg_offsets.push_back(pos_);
          group.push_back(arg(is_string(e->groups.size(), group.size())));
          if (!accept(',')) break;
        }
        e->groups.push_back(std::move(group));
        if (!accept(';')) break;
      }
    }
    expect(')', {",", ";", ")"});
    std::vector<std::size_t> shape;
    for (const auto& g : e->groups) shape.push_back(g.size());
    bool ok = false;
    for (const auto& s : b.shapes) ok = ok || s == shape;
    if (!ok) error({b.info.signature}, "wrong arguments for " + name, at);
    // Reject malformed literal arguments up front.
    std::size_t k = 0;
    for (std::size_t g = 0; g < e->groups.size(); ++g)
      for (std::size_t i = 0; i < e->groups[g].size(); ++i, ++k) {
        const Expr& a = *e->groups[g][i];
        if (a.kind == NodeKind::Symbol && !(name == "poch" && g == 2))
          error({"expression"}, "'inf' is only a poch length", arg_offsets[k]);
        if (a.kind != NodeKind::String) continue;
        try {
          if (name == "sum") named(a.text);
          if (name == "tri") parse_triangular_spec(a.text);
        } catch (const Error& err) {
          error({b.info.signature}, err.what(), arg_offsets[k]);
        }
      }
    return e;
  }
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::Neg:
      return 3;
    case NodeKind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string wrap(const Expr& e, bool paren) { return paren ? "(" + to_string(e) + ")" : to_string(e); }

// ---------------------------------------------------------------------------
// Evaluation

QSeries eval_node(const Expr& e, const Rational& N);

std::function<QSeries(const Rational&)> memoized(const Expr& e) {
  auto cache = std::make_shared<std::optional<QSeries>>();
  return [&e, cache](const Rational& W) {
    if (*cache && order_at_least((*cache)->order(), W)) return (*cache)->truncated(W);
    QSeries s = eval_node(e, W);
    *cache = s;
    return s;
  };
}

void flatten(const Expr& e, bool inverted, Monomial& pre, std::vector<Factor>& out) {
  if (auto m = fold(e)) {
    if (inverted) {
      if (m->is_zero()) fail(ErrorKind::ZeroSeries, "division by zero");
      pre = pre / *m;
    } else {
      pre = pre * *m;
    }
    return;
  }
  switch (e.kind) {
    case NodeKind::Mul:
      flatten(*e.children[0], inverted, pre, out);
      flatten(*e.children[1], inverted, pre, out);
      return;
    case NodeKind::Div:
      flatten(*e.children[0], inverted, pre, out);
      flatten(*e.children[1], !inverted, pre, out);
      return;
    case NodeKind::Neg:
      pre = -pre;
      flatten(*e.children[0], inverted, pre, out);
      return;
    case NodeKind::Pow: {
      if (!is_integer(e.value)) fail(ErrorKind::InvalidArgument, "only monomials take fractional powers");
      std::int64_t k = to_int64(e.value);
      bool inv = k < 0 ? !inverted : inverted;
      auto build = memoized(*e.children[0]);
      for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out.push_back(Factor{build, inv});
      return;
    }
    default:
      out.push_back(Factor{memoized(e), inverted});
  }
}

QSeries eval_node(const Expr& e, const Rational& N) {
  if (auto m = fold(e)) return QSeries::monomial(*m);
  switch (e.kind) {
    case NodeKind::Add:
      return eval_node(*e.children[0], N) + eval_node(*e.children[1], N);
    case NodeKind::Sub:
      return eval_node(*e.children[0], N) - eval_node(*e.children[1], N);
    case NodeKind::Neg:
      return -eval_node(*e.children[0], N);
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Pow: {
      Monomial pre = Monomial::scalar(Rational(1));
      std::vector<Factor> factors;
      flatten(e, false, pre, factors);
      return product_to(N, pre, factors);
    }
    case NodeKind::Call: {
      const Builder& b = table().at(e.text);
      Args args{e};
      try {
        return evaluate_to(N, [&](const Rational& W) { return b.eval(args, W); });
      } catch (const ParseFailure&) {
        throw;
      } catch (const Error& err) {
        std::string what = err.what();
        if (what.find(" [in ") == std::string::npos) what += " [in " + to_string(e) + "]";
        throw Error(err.kind(), what);
      }
    }
    default:
      fail(ErrorKind::InvalidArgument, "'" + to_string(e) + "' is only valid as an argument");
  }
}

}  // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Number:
      return to_string(e.value);
    case NodeKind::Var:
      return "q";
    case NodeKind::Symbol:
      return e.text;
    case NodeKind::String:
      return "\"" + e.text + "\"";
    case NodeKind::Call: {
      std::string out = e.text + "(";
      for (std::size_t g = 0; g < e.groups.size(); ++g) {
        if (g) out += "; ";
        for (std::size_t i = 0; i < e.groups[g].size(); ++i) out += (i ? ", " : "") + to_string(*e.groups[g][i]);
      }
      return out + ")";
    }
    case NodeKind::Neg:
      return "-" + wrap(*e.children[0], precedence(*e.children[0]) < 3);
    case NodeKind::Add:
    case NodeKind::Sub: {
      const char* op = e.kind == NodeKind::Add ? " + " : " - ";
      return to_string(*e.children[0]) + op + wrap(*e.children[1], precedence(*e.children[1]) <= 1);
    }
    case NodeKind::Mul:
    case NodeKind::Div: {
      const char* op = e.kind == NodeKind::Mul ? "*" : "/";
      return wrap(*e.children[0], precedence(*e.children[0]) < 2) + op +
             wrap(*e.children[1], precedence(*e.children[1]) <= 2);
    }
    case NodeKind::Pow: {
      std::string base = wrap(*e.children[0], precedence(*e.children[0]) < 5);
      if (is_integer(e.value) && e.value >= 0) return base + "^" + to_string(e.value);
      return base + "^{" + to_string(e.value) + "}";
    }
  }
  return "";
}

QSeries evaluate(const Expr& e, const Rational& order) { return eval_node(e, order).truncated(order); }

QSeries evaluate(std::string_view text, const Rational& order) { return evaluate(*parse_expression(text), order); }

const std::vector<BuilderInfo>& builders() {
  static const std::vector<BuilderInfo> out = [] {
    std::vector<BuilderInfo> v;
    for (const auto& [name, b] : table()) v.push_back(b.info);
    return v;
  }();
  return out;
}

}  // namespace qhecke
