#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "qhecke/decompose.hpp"
#include "qhecke/expr.hpp"
#include "qhecke/registry.hpp"

using namespace qhecke;

namespace {

int cmd_list(const Registry& reg) {
  std::size_t w = 2;
  for (const auto& r : reg.records()) w = std::max(w, r.id.size());
  for (const auto& r : reg.records()) {
    std::cout << std::left << std::setw(static_cast<int>(w)) << r.id << "  " << std::setw(4)
              << to_string(r.default_order) << "  " << r.ref;
    if (r.status == RecordStatus::KnownTypo) std::cout << "  [" << to_string(r.status) << "]";
    std::cout << "\n";
  }
  return 0;
}

int cmd_verify(const Registry& reg, const std::optional<long>& order, const std::vector<std::string>& ids,
               const std::string& format, unsigned threads) {
  std::optional<Rational> n;
  if (order) n = Rational(*order);
  std::vector<VerifyReport> reports = run_all(reg, n, ids, threads);
  if (format == "records") {
    for (const auto& r : reports) std::cout << to_record_line(r) << "\n";
  } else {
    std::cout << format_table(reports);
  }
  for (const auto& r : reports)
    if (!r.passed()) return 1;
  return 0;
}

int cmd_series(const std::string& text, long order) {
  QSeries s = evaluate(text, Rational(order));
  for (const Term& t : s.terms()) std::cout << to_string(t.exp) << " " << to_string(t.coeff) << "\n";
  std::cout << "O(q^" << order << ")\n";
  return 0;
}

int cmd_decompose(const std::string& text, long order) {
  DecompositionResult d = decompose(parse_triangular_spec(text));
  std::cout << "input: " << to_string(d.input) << "\n";
  for (std::size_t i = 0; i < d.pieces.size(); ++i)
    std::cout << "piece " << d.pieces[i].label << ": " << to_string(d.pieces[i].term) << "\n";
  for (const auto& p : d.pairing)
    std::cout << "pair " << d.pieces[p.positive].label << " + reflected " << d.pieces[p.negative].label << "\n";
  for (const auto& t : d.terms) std::cout << "term " << to_string(t) << "\n";
  CheckReport rep = verify_decomposition(d, Rational(order));
  if (rep.ok()) {
    std::cout << "verify order " << order << ": pass\n";
    return 0;
  }
  const Mismatch& m = *rep.mismatch;
  std::cout << "verify order " << order << ": fail at q^" << to_string(m.exponent) << ": " << to_string(m.lhs)
            << " vs " << to_string(m.rhs) << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-series checks for Hecke-type double sums"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print the identity registry");

  auto* verify = app.add_subcommand("verify", "verify registry identities");
  std::optional<long> order;
  std::vector<std::string> ids;
  std::string format = "table";
  std::string file;
  unsigned threads = 0;
  verify->add_option("--order", order, "truncation order (default: each record's own)")->check(CLI::NonNegativeNumber);
  verify->add_option("--id", ids, "identity id; repeatable");
  verify->add_option("--format", format, "table or records")->check(CLI::IsMember({"table", "records"}));
  verify->add_option("--file", file, "load records from a file instead of the built-in registry")
      ->check(CLI::ExistingFile);
  verify->add_option("--threads", threads, "worker count (0: one per core)");

  auto* series = app.add_subcommand("series", "print the expansion of an expression");
  std::string expr;
  long series_order = 20;
  series->add_option("--expr", expr, "expression")->required();
  series->add_option("--order", series_order, "truncation order")->check(CLI::NonNegativeNumber);

  auto* dec = app.add_subcommand("decompose", "split a triangular sum into f and g terms");
  std::string spec;
  long dec_order = 60;
  dec->add_option("--spec", spec, "e.g. \"quad=1,1,0,0,0,1 signs=0,1 range=abs extra=1,0,2,1\"")->required();
  dec->add_option("--order", dec_order, "verification order")->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) return cmd_list(builtin_registry());
    if (*verify) {
      if (file.empty()) return cmd_verify(builtin_registry(), order, ids, format, threads);
      Registry reg;
      for (auto& r : load_records_file(file)) reg.add(std::move(r));
      return cmd_verify(reg, order, ids, format, threads);
    }
    if (*series) return cmd_series(expr, series_order);
    if (*dec) return cmd_decompose(spec, dec_order);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  }
  return 0;
}
