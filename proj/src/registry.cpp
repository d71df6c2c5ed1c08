#include "qhecke/registry.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qhecke/theta.hpp"

namespace qhecke {

std::string_view to_string(RecordStatus s) {
  return s == RecordStatus::ExpectedPass ? "expected-pass" : "known-typo-adjudication";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::Error:
      return "error";
  }
  return "error";
}

IdentityRecord make_record(std::string id, std::string_view lhs, std::string_view rhs, Rational order,
                           std::string ref) {
  IdentityRecord r;
  r.id = std::move(id);
  r.lhs = parse_expression(lhs);
  r.rhs = parse_expression(rhs);
  r.default_order = std::move(order);
  r.ref = std::move(ref);
  return r;
}

void Registry::add(IdentityRecord r) {
  if (find(r.id)) fail(ErrorKind::InvalidArgument, "duplicate identity id '" + r.id + "'");
  records_.push_back(std::move(r));
}

const IdentityRecord* Registry::find(std::string_view id) const {
  for (const auto& r : records_)
    if (r.id == id) return &r;
  return nullptr;
}

namespace {

// Triangular sums used below.
constexpr const char* kTh11 = "\"quad=1,1,0,0,0,1 signs=0,1 range=abs extra=1,0,2,1\"";
constexpr const char* kTh12 = "\"quad=1,1,0,0,0,1 signs=0,1 range=abs extra=-1,0,2,1\"";
constexpr const char* kTh21 = "\"quad=1,-2,0,0,0,1 signs=0,1 range=half extra=1,0,2,1\"";
constexpr const char* kTh22 = "\"quad=1,-2,0,0,0,1 signs=0,1 range=half extra=-1,0,2,1\"";
constexpr const char* kWy1 = "\"quad=1,1,0,0,0,1 signs=0,1 range=abs start=1\"";
constexpr const char* kWy2 = "\"quad=1,-2,0,0,0,1 signs=0,1 range=half start=1\"";
constexpr const char* kLiuA = "\"quad=1,-1,1,0,0,1 signs=1,1 range=abs\"";
constexpr const char* kLiuB = "\"quad=2,-1,1,0,0,1 signs=0,1 range=abs extra=-1,0,2,1\"";
constexpr const char* kLiuC = "\"quad=3,-2,1,0,0,2 signs=0,1 range=abs extra=-1,0,2,1\"";
constexpr const char* kLiu46 = "\"quad=3,-1,1,0,0,1 signs=1,1 range=abs extra=-1,0,4,2\"";
constexpr const char* kLiu46Printed = "\"quad=3,-1,1,0,0,1 signs=1,1 range=atmost extra=-1,0,4,2\"";
constexpr const char* kLiu48 = "\"quad=4,-1,2,-1,0,2 signs=0,0 range=lower extra=-1,0,6,6\"";
constexpr const char* kLiu410 = "\"quad=4,-1,2,-1,0,2 signs=1,0 range=lower extra=-1,0,6,6\"";

std::string tri(const char* spec) { return std::string("tri(") + spec + ")"; }

struct Row {
  std::string id, lhs, rhs;
  long order;
  std::string ref;
  std::string printed_lhs = {}, printed_rhs = {};
};

std::vector<Row> rows() {
  const std::string g101 = "g(1,0,1; q^2, q^2; q^4) + q*g(1,0,1; q^4, q^4; q^4)";
  const std::string g131 =
      "q*g(1,3,1; q^6, q^6; q^4) + g(1,3,1; q^2, q^2; q^4) + q^4*g(1,3,1; q^10, q^10; q^4) + "
      "q^9*g(1,3,1; q^14, q^14; q^4)";
  const std::string tail = "ptheta(2, 0)";
  const std::string f443b_rhs =
      "Jbar(0,3)*mu()/4 - Jbar(1,3)*phi()/2 + Jbar(1,3)*(1 + theta2()) + Jbar(0,3)*J(6,12)^2/Jm(3)^3/4 + "
      "theta(4,4,3; -q^3, -q^2; q)/(Jbar(0,16)*Jbar(0,12))";
  const std::string g443b_rhs = "Jbar(1,3)*(1 - phi()/2 + theta2()) + Jbar(0,3)*(mu() + J(6,12)^2/Jm(3)^3)/4";
  const std::string thm92_443 =
      "G(4,4,3; -q^3, -q^2, -1, -1; q) + theta(4,4,3; -q^3, -q^2; q)/(j(-1; q^16)*j(-1; q^12))";
  const std::string lp = "poch(q; q; inf)";
  return {
      // Wang-Yee sums
      {"wy-th1", "sum(\"wy1-lhs\")", tri(kWy1) + " - " + tail, 50, "WYth1"},
      {"wy-th2", "sum(\"wy2-lhs\")", tri(kWy2) + " - " + tail, 50, "WYth2"},
      {"wy-th3", "sum(\"wy3-lhs\")", tri(kWy2) + " - " + tail, 50, "WYth3"},
      {"wy-new-th1", "sum(\"wy1-lhs\")", "(" + g101 + " - 1)/2", 50, "WYNewTh1, final line"},
      {"wy-new-th2", "sum(\"wy2-lhs\")", "(" + g131 + " - 1)/2", 50, "WYNewTh2, final line"},
      {"wy-new-th1-middle", "sum(\"wy1-lhs\")", "(" + g101 + " + j(q^2; q^4))/2 - " + tail + " - 1", 50,
       "WYNewTh1, second line", "sum(\"wy1-lhs\")", "(" + g101 + " + j(q^2; q^4))/2 - " + tail},
      {"wy-new-th1-final", "sum(\"wy1-lhs\")", "(" + g101 + " - 1)/2", 50, "WYNewTh1, final line",
       "sum(\"wy1-lhs\")", "(" + g101 + " + 1)/2"},
      {"wy-new-th2-middle", "sum(\"wy2-lhs\")", "(" + g131 + " + j(q^2; q^4))/2 - " + tail + " - 1", 50,
       "WYNewTh2, third line", "sum(\"wy2-lhs\")", "(" + g131 + " + j(q^2; q^4))/2 - " + tail},
      {"wy-new-th2-final", "sum(\"wy2-lhs\")", "(" + g131 + " - 1)/2", 50, "WYNewTh2, final line",
       "sum(\"wy2-lhs\")", "(" + g131 + " + 1)/2"},
      {"wy-th2-th3", "sum(\"wy2-lhs\")", "sum(\"wy3-lhs\")", 50, "WYNewTh2, first line"},

      // Completed triangular sums
      {"th11", tri(kTh11), g101, 50, "th11"},
      {"th12", tri(kTh12), "f(1,0,1; q^2, q^2; q^4) + q*f(1,0,1; q^4, q^4; q^4)", 50, "th12"},
      {"th12-j", tri(kTh12), "j(q^2; q^4)", 50, "th12, second line"},
      {"th21", tri(kTh21), g131, 50, "th21"},
      {"th22", tri(kTh22),
       "q*g(1,3,1; q^6, q^6; q^4) + f(1,3,1; q^2, q^2; q^4) + q^4*f(1,3,1; q^10, q^10; q^4) - "
       "q^9*g(1,3,1; q^14, q^14; q^4)",
       50, "th22"},
      {"th22-j", tri(kTh22), "j(q^2; q^4)", 50, "th22, last line"},

      // Liu sums
      {"liu-111a", "sum(\"liu111a-lhs\")", "Jm(2)^2/Jm(1)", 60, "Liu1_11a_new"},
      {"liu-111b", "sum(\"liu111b-lhs\")", "Jm(2)", 60, "Liu1_11b_new"},
      {"liu-111c", "sum(\"liu111c-lhs\")", "Jm(1)", 60, "Liu1_11c_new"},
      {"liu-111a-double", "sum(\"liu111a-lhs\")", "poch(q; q^2; inf)/poch(q^2; q^2; inf)*" + tri(kLiuA), 50,
       "Liu1_11a"},
      {"liu-111b-double", "sum(\"liu111b-lhs\")", tri(kLiuB) + "/" + lp, 50, "Liu1_11b"},
      {"liu-111c-double", "sum(\"liu111c-lhs\")", "poch(-q; q; inf)/" + lp + "*" + tri(kLiuC), 50, "Liu1_11c"},
      {"liu-111a-f010", "sum(\"liu111a-lhs\")", "poch(q; q^2; inf)/poch(q^2; q^2; inf)*f(0,1,0; -q, -q; q^4)", 50,
       "Liu1_11a_new, second line"},
      {"liu-111b-f131", "sum(\"liu111b-lhs\")", "(f(1,3,1; q^2, q^2; q^2) + q^3*f(1,3,1; q^6, q^6; q^2))/" + lp, 50,
       "Liu1_11b_new, second line"},
      {"liu-111c-f151", "sum(\"liu111c-lhs\")",
       "poch(-q; q; inf)/" + lp + "*(f(1,5,1; q, q; q) + q^2*f(1,5,1; q^4, q^4; q))", 50,
       "Liu1_11c_new, second line"},
      {"liu-111c-J1J12", "f(1,5,1; q, q; q) + q^2*f(1,5,1; q^4, q^4; q)", "Jm(1)*J(1,2)", 50,
       "Liu1_11c_new, third line"},
      {"liu-111a-intermediate", tri(kLiuA), "f(0,1,0; -q, -q; q^4)", 50, "Liu1_11aIntermediate"},
      {"liu-111b-intermediate", tri(kLiuB), "f(1,3,1; q^2, q^2; q^2) + q^3*f(1,3,1; q^6, q^6; q^2)", 50,
       "Liu1_11bIntermediate"},
      {"liu-111c-intermediate", tri(kLiuC), "f(1,5,1; q, q; q) + q^2*f(1,5,1; q^4, q^4; q)", 50,
       "Liu1_11cIntermediate"},
      {"liu-48", "sum(\"liu48-lhs\")", tri(kLiu48) + "/" + lp, 50, "Liu4_8"},
      {"liu-410", "sum(\"liu410-lhs\")", tri(kLiu410) + "/" + lp, 50, "Liu4_10"},
      {"liu-46", "sum(\"liu46-lhs\")", tri(kLiu46), 50, "Liu4_6, read as |m| <= n"},
      {"liu-46-g121", "sum(\"liu46-lhs\")", "g(1,2,1; -q^3, -q^3; q^4) - q^4*g(1,2,1; -q^9, -q^9; q^4)", 50,
       "Liu4_6 in type II form"},
      {"liu-46-range", "sum(\"liu46-lhs\")", tri(kLiu46), 50, "Liu4_6 inner range", "sum(\"liu46-lhs\")",
       tri(kLiu46Printed)},
      {"liu-443-neg", "sum(\"liu48-lhs\")", "f(4,4,3; -q^3, -q^2; q)/" + lp, 50, "Liu443-negative"},
      {"liu-443-pos", "sum(\"liu410-lhs\")", "f(4,4,3; q^3, q^2; q)/" + lp, 50, "Liu443-positive"},
      {"liu-410-psi", "sum(\"liu410-lhs\")", "psi()", 50, "psi as the Liu4_10 left side"},

      // Introductory examples
      {"f121-example", "f(1,2,1; -q, -q^3; q)",
       "j(-q^3; q)*m(-q^{-3}, q^2; q^3) + j(-q; q)*m(-q^3, q^{-2}; q^3)", 50, "equation:f121-example"},
      {"sigma-g133", "sigma()", "g(1,3,3; -q, q^2; q) - q*g(1,3,3; -q^3, q^4; q)", 50, "sigma(q) in type II form"},
      {"sigma-sum", "sum(\"sigma\")", "sigma()", 50, "sigma(q) definition"},
      {"g122-false-theta", "g(1,2,2; q, -q^3; q)", "1 + 2*ptheta(1/2, 1/2)", 50, "false theta example"},
      {"kronecker", "f(0,1,0; -q, -q; q^4)",
       "poch(q^4; q^4; inf)^2*poch(q^2; q^4; inf)^2/(poch(q; q^4; inf)^2*poch(q^3; q^4; inf)^2)", 50,
       "KroneckerIdentity at x = y = q"},
      {"kronecker-b", "f(0,1,0; q^2, q^2; q^4)", "kron(-q^2, -q^2; q^4)", 50, "KroneckerIdentity at x = y = -q^2"},

      // Reductions
      {"lemma-f101-zero", "f(1,0,1; q, q; q)", "0", 50, "lemmaf0"},
      {"lemma-f101-j", "f(1,0,1; q, q; q^2)", "j(q; q^2)", 50, "lemmaftoj"},
      {"lemma-f131-zero", "f(1,3,1; q^5, q^5; q^2)", "0", 50, "lemmaf0_2"},
      {"lemma-g131-cancel", "g(1,3,1; q^3, q^3; q^2) - q^4*g(1,3,1; q^7, q^7; q^2)", "0", 50, "lemmag0"},
      {"lemma-f010-product", "poch(q; q^2; inf)/poch(q^2; q^2; inf)*f(0,1,0; -q, -q; q^4)", "Jm(2)^2/Jm(1)", 50,
       "lemmaf010"},
      {"th-f131-j", "f(1,3,1; q^2, q^2; q^4)", "j(q^2; q^4)", 100, "f131Th"},
      {"th-f131-jhalf", "f(1,3,1; q^2, q^2; q^4)", "j(q^{1/2}; -q)", 100, "f131Th, middle"},
      {"th-f131-pair", "2*f(1,3,1; q^2, q^2; q^4)",
       "f(1,3,1; q^{1/2}, q^{1/2}; -q) + f(1,3,1; -q^{1/2}, -q^{1/2}; -q)", 50, "sum of the parity-split pair"},
      {"sec8-f131-J1J2", "f(1,3,1; q^2, q^2; q^2) + q^3*f(1,3,1; q^6, q^6; q^2)", "Jm(1)*Jm(2)", 100,
       "f131q3f131section"},
      {"f131-pair-interm1", "f(1,3,1; q^2, q^2; q^2) + q^3*f(1,3,1; q^6, q^6; q^2)",
       "J(4,8)*J(16,32)*j(q^2; q^16)*j(q^10; q^16)*Jm(32)*J(1,4)/(j(-q^6; q^16)*j(-q^14; q^16)*Jm(16)^2)", 50,
       "interm1"},

      // Mixed mock double sums
      {"f443-a", "f(4,4,3; q^3, q^2; q)", "Jm(1)*psi()", 50, "equation:f443-A"},
      {"f443-b", "f(4,4,3; -q^3, -q^2; q)", f443b_rhs, 50, "equation:f443-B with Theta made explicit"},
      {"prop-msplit-1",
       "m(-q^6, -1; q^16) + q^-1*m(-q^2, -1; q^16) + q^-3*m(-q^{-2}, -1; q^16) + q^-6*m(-q^{-6}, -1; q^16)", "0",
       50, "prop:msplit, first identity"},
      {"prop-msplit-2", "m(-q^7, -1; q^12) - q^-1*m(-q, -1; q^12)", "m(q^2, -1; q^3) + theta2()", 60,
       "prop:msplit, second identity"},
      {"prop-f443B", "G(4,4,3; -q^3, -q^2, -1, -1; q)", g443b_rhs, 50, "prop:f443B, final display of its proof"},
      {"prop-f443B-theta1", "G(4,4,3; -q^3, -q^2, -1, -1; q)", g443b_rhs, 50, "prop:f443B statement",
       "G(4,4,3; -q^3, -q^2, -1, -1; q)",
       "Jbar(0,3)*mu()/4 - Jbar(1,3)*phi()/2 + Jbar(1,3) + Jbar(1,4)*Theta1() + Jbar(1,3)*theta2() + "
       "Jbar(0,3)*J(6,12)^2/Jm(3)^3/4"},
      {"prop-f443A-frange", "f(4,4,3; -q^3, -q^2; q)", thm92_443, 50, "prop:f443A, theta sum over f",
       "f(4,4,3; -q^3, -q^2; q)",
       "G(4,4,3; -q^3, -q^2, -1, -1; q) + theta(4,4,3; -q^3, -q^2; q; 5)/(j(-1; q^16)*j(-1; q^12))"},
      {"mu-relation", "mu()", "4*m(-q^3, -1; q^12) - J(6,12)^2/Jm(3)^3", 50, "mu(q^3) relation as printed"},
      {"phi-relation", "m(q^2, -1; q^3)", "1 - phi()/2", 50, "prop:f443B proof, phi step"},

      // General expansion
      {"thm92-121", "f(1,2,1; q, q^2; q)",
       "G(1,2,1; q, q^2, -1, -1; q) + theta(1,2,1; q, q^2; q)/(j(-1; q^3)*j(-1; q^3))", 50, "theo:general-fabc"},
      {"thm92-121-b", "f(1,2,1; -q^2, q^3; q)",
       "G(1,2,1; -q^2, q^3, -1, -1; q) + theta(1,2,1; -q^2, q^3; q)/(j(-1; q^3)*j(-1; q^3))", 50,
       "theo:general-fabc"},
      {"thm92-443", "f(4,4,3; -q^3, -q^2; q)", thm92_443, 50, "theo:general-fabc"},
      {"thm92-443-b", "f(4,4,3; q^3, q^2; q)",
       "G(4,4,3; q^3, q^2, -1, -1; q) + theta(4,4,3; q^3, q^2; q)/(j(-1; q^16)*j(-1; q^12))", 50,
       "theo:general-fabc"},

      // Theta identities
      {"jid-a", "j(q^3; q^4)", "j(q; q^4)", 50, "jIdentityA"},
      {"jid-b", "j(q^3; q^2)", "-q^-1*j(q; q^2)", 50, "jIdentityB"},
      {"jid-x2", "j(q; q^2)", "j(q^{1/2}; q)*j(-q^{1/2}; q)*Jm(2)/Jm(1)^2", 50, "jx2Identity at x = q^{1/2}"},
      {"jid-prod", "j(-q^{1/2}; q)", "j(-q^{1/2}; q^2)*j(-q^{3/2}; q^2)*Jm(1)/Jm(2)^2", 50,
       "jxToProduct at x = -q^{1/2}"},
      {"jsplit-m2", "j(-q^{1/2}; q)", "j(-q^2; q^4) + q^{1/2}*j(-q^4; q^4)", 50, "jinto2sums at z = -q^{1/2}"},
      {"bigj-1", "J(1,2)", "Jm(1)^2/Jm(2)", 50, "bigJidentities"},
      {"bigj-2", "J(1,4)", "Jm(1)*Jm(4)/Jm(2)", 50, "bigJidentities"},
      {"bigj-3", "Jbar(1,4)", "Jm(2)^2/Jm(1)", 50, "bigJidentities"},
      {"last-id", "j(q^2; q^4)", "1 + 2*" + tail, 60, "equation:last-id", "j(q^2; q^4)", "1 + " + tail},

      // Appell-Lerch relations
      {"m-rel-1", "m(q^2, -q; q^5)", "q^-2*m(q^-2, -q^-1; q^5)", 50, "mrelation1"},
      {"m-rel-2", "m(q^2, -1; q^3)", "1 - m(q, -1; q^3)", 60, "mrelation2"},
      {"f131-decomposition", "f(1,3,1; q, q^2; q)", "f131(q, q^2; q; 1)", 50, "f131decomposition"},

      // Functional equations
      {"prop-f1", "f(1,3,1; q^2, q^2; q^4)", "-q^16*f(1,3,1; q^18, q^18; q^4)", 50, "f1"},
      {"prop-f2", "f(1,0,1; q, q; q^2)", "q^2*f(1,0,1; q^3, q^3; q^2) + 2*j(q; q^2)", 50, "f2 with l = k = 1"},
      {"prop-g1", "g(1,2,1; -q^3, -q^3; q^4)", "q^10*g(1,2,1; -q^13, -q^13; q^4)", 50, "g1"},
      {"prop-g2", "g(1,3,1; q^2, q^2; q^4)", "gshift(1,3,1; q^2, q^2; q^4; 1, 0)", 50, "g2 with l = 1"},
      {"prop-g2-sg", "g(1,3,1; q^2, q^2; q^4)", "gshift(1,3,1; q^2, q^2; q^4; 1, 0)", 50, "g2, definition of sg",
       "g(1,3,1; q^2, q^2; q^4)", "gshift_printed(1,3,1; q^2, q^2; q^4; 1, 0)"},
      {"f-parity-split", "f(1,3,1; q^{1/2}, q^{1/2}; -q)",
       "f(1,3,1; q^2, q^2; q^4) - q^{1/2}*f(1,3,1; q^4, q^8; q^4) - q^{1/2}*f(1,3,1; q^8, q^4; q^4) - "
       "q^4*f(1,3,1; q^10, q^10; q^4)",
       50, "parity split of f_{1,3,1} at nome -q"},
      {"f-parity-split-b", "f(1,3,1; -q^{1/2}, -q^{1/2}; -q)",
       "f(1,3,1; q^2, q^2; q^4) + q^{1/2}*f(1,3,1; q^4, q^8; q^4) + q^{1/2}*f(1,3,1; q^8, q^4; q^4) - "
       "q^4*f(1,3,1; q^10, q^10; q^4)",
       50, "parity split of f_{1,3,1} at nome -q, second display"},
  };
}

Evidence compare(const ExprPtr& lhs, const ExprPtr& rhs, const Rational& order) {
  Evidence ev;
  try {
    CheckReport rep = compare_series("", evaluate(*lhs, order), evaluate(*rhs, order), order);
    if (!rep.ok()) {
      ev.outcome = Outcome::Fail;
      ev.mismatch = rep.mismatch;
    }
  } catch (const Error& e) {
    ev.outcome = Outcome::Error;
    ev.error = e.kind();
    ev.message = e.what();
  }
  return ev;
}

Evidence compare_text(const std::string& lhs, const std::string& rhs, const Rational& order) {
  ExprPtr l, r;
  try {
    l = parse_expression(lhs);
    r = parse_expression(rhs);
  } catch (const Error& e) {
    Evidence ev;
    ev.outcome = Outcome::Error;
    ev.error = e.kind();
    ev.message = e.what();
    return ev;
  }
  return compare(l, r, order);
}

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && ws(s.back())) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && ws(s[b])) ++b;
  return s.substr(b);
}

}  // namespace

const Registry& builtin_registry() {
  static const Registry reg = [] {
    Registry r;
    for (const auto& row : rows()) {
      IdentityRecord rec = make_record(row.id, row.lhs, row.rhs, Rational(row.order), row.ref);
      if (!row.printed_rhs.empty()) {
        rec.status = RecordStatus::KnownTypo;
        rec.printed_lhs = row.printed_lhs;
        rec.printed_rhs = row.printed_rhs;
      }
      r.add(std::move(rec));
    }
    return r;
  }();
  return reg;
}

std::vector<IdentityRecord> load_records(std::istream& in) {
  std::vector<IdentityRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(t);
    std::string f;
    while (std::getline(ss, f, '|')) fields.push_back(trim(f));
    if (!t.empty() && t.back() == '|') fields.push_back("");
    auto bad = [&](const std::string& why) {
      fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + why);
    };
    if (fields.size() != 5) bad("expected 'id | lhs | rhs | order | paperRef', got " + std::to_string(fields.size()) + " fields");
    if (fields[0].empty()) bad("empty id");
    Rational order;
    try {
      order = parse_rational(fields[3]);
    } catch (const Error& e) {
      bad(std::string("bad order: ") + e.what());
    }
    if (order < 0) bad("order must be nonnegative");
    try {
      out.push_back(make_record(fields[0], fields[1], fields[2], order, fields[4]));
    } catch (const Error& e) {
      bad(e.what());
    }
  }
  return out;
}

std::vector<IdentityRecord> load_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  return load_records(in);
}

VerifyReport run_record(const IdentityRecord& r, const std::optional<Rational>& order) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.id = r.id;
  rep.order = order.value_or(r.default_order);
  rep.status = r.status;
  rep.result = compare(r.lhs, r.rhs, rep.order);
  if (r.status == RecordStatus::KnownTypo) {
    rep.printed = compare_text(r.printed_lhs, r.printed_rhs, rep.order);
    if (rep.result.outcome == Outcome::Pass && rep.printed->outcome == Outcome::Pass) {
      rep.result.outcome = Outcome::Error;
      rep.result.error = ErrorKind::InvalidArgument;
      rep.result.message = "the printed reading also holds to this order";
    }
  }
  rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

VerifyReport run_identity(const Registry& reg, std::string_view id, const std::optional<Rational>& order) {
  const IdentityRecord* r = reg.find(id);
  if (!r) fail(ErrorKind::UnknownIdentity, "no identity '" + std::string(id) + "'");
  return run_record(*r, order);
}

std::vector<VerifyReport> run_all(const Registry& reg, const std::optional<Rational>& order,
                                  const std::vector<std::string>& ids, unsigned threads) {
  std::vector<const IdentityRecord*> todo;
  if (ids.empty()) {
    for (const auto& r : reg.records()) todo.push_back(&r);
  } else {
    for (const auto& id : ids) {
      const IdentityRecord* r = reg.find(id);
      if (!r) fail(ErrorKind::UnknownIdentity, "no identity '" + id + "'");
      todo.push_back(r);
    }
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, todo.size())));

  std::vector<VerifyReport> out(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) out[i] = run_record(*todo[i], order);
  };
  std::vector<std::future<void>> pool;
  for (unsigned t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();
  return out;
}

namespace {

nlohmann::ordered_json evidence_json(const Evidence& ev) {
  nlohmann::ordered_json j;
  j["outcome"] = std::string(to_string(ev.outcome));
  if (ev.mismatch) {
    j["mismatch_exponent"] = to_string(ev.mismatch->exponent);
    j["lhs_coeff"] = to_string(ev.mismatch->lhs);
    j["rhs_coeff"] = to_string(ev.mismatch->rhs);
  }
  if (ev.error) {
    j["error_kind"] = std::string(to_string(*ev.error));
    j["message"] = ev.message;
  }
  return j;
}

std::string evidence_text(const Evidence& ev) {
  if (ev.mismatch)
    return "q^" + to_string(ev.mismatch->exponent) + ": " + to_string(ev.mismatch->lhs) + " vs " +
           to_string(ev.mismatch->rhs);
  if (ev.error) return std::string(to_string(*ev.error));
  return "";
}

}  // namespace

std::string to_record_line(const VerifyReport& r, bool with_time) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["order"] = to_string(r.order);
  j["status"] = std::string(to_string(r.status));
  nlohmann::ordered_json ev = evidence_json(r.result);
  for (auto& [k, v] : ev.items()) j[k] = v;
  if (r.printed) j["printed"] = evidence_json(*r.printed);
  if (with_time) j["millis"] = static_cast<std::int64_t>(r.millis + 0.5);
  return j.dump();
}

std::string format_table(const std::vector<VerifyReport>& reports) {
  std::size_t w = 2;
  for (const auto& r : reports) w = std::max(w, r.id.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(w)) << "id" << "  " << std::setw(6) << "order" << std::setw(7)
     << "result" << std::setw(9) << "millis" << "detail\n";
  std::size_t passed = 0;
  for (const auto& r : reports) {
    if (r.passed()) ++passed;
    std::string detail = evidence_text(r.result);
    if (r.result.outcome == Outcome::Error && !r.result.message.empty()) detail = r.result.message;
    if (r.printed) {
      std::string p = evidence_text(*r.printed);
      detail += (detail.empty() ? "" : "; ") + std::string("printed reading ") +
                std::string(to_string(r.printed->outcome)) + (p.empty() ? "" : " (" + p + ")");
    }
    std::ostringstream ms;
    ms << std::fixed << std::setprecision(0) << r.millis;
    os << std::setw(static_cast<int>(w)) << r.id << "  " << std::setw(6) << to_string(r.order) << std::setw(7)
       << to_string(r.result.outcome) << std::setw(9) << ms.str() << detail << "\n";
  }
  os << passed << "/" << reports.size() << " passed\n";
  return os.str();
}

}  // namespace qhecke
