#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qhecke/expr.hpp"
#include "qhecke/series.hpp"

namespace qhecke {

enum class RecordStatus { ExpectedPass, KnownTypo };
std::string_view to_string(RecordStatus s);

struct IdentityRecord {
  std::string id;
  ExprPtr lhs;
  ExprPtr rhs;
  Rational default_order{50};
  std::string ref;
  RecordStatus status = RecordStatus::ExpectedPass;
  // Known typos: lhs = rhs is the corrected reading, and the printed reading
  // below is expected to fail. Kept as text; an undefined printed symbol
  // surfaces as a parse error when it is run.
  std::string printed_lhs;
  std::string printed_rhs;
};

IdentityRecord make_record(std::string id, std::string_view lhs, std::string_view rhs, Rational order,
                           std::string ref);

class Registry {
 public:
  // Throws InvalidArgument on a duplicate id.
  void add(IdentityRecord r);
  const IdentityRecord* find(std::string_view id) const;
  const std::vector<IdentityRecord>& records() const { return records_; }

 private:
  std::vector<IdentityRecord> records_;
};

// The embedded catalog.
const Registry& builtin_registry();

// One record per line, `id | lhs | rhs | order | paperRef`; blank lines and
// lines starting with '#' are skipped. Records load as expected-pass.
// Throws ParseError naming the line.
std::vector<IdentityRecord> load_records(std::istream& in);
std::vector<IdentityRecord> load_records_file(const std::string& path);

enum class Outcome { Pass, Fail, Error };
std::string_view to_string(Outcome o);

struct Evidence {
  Outcome outcome = Outcome::Pass;
  std::optional<Mismatch> mismatch;
  std::optional<ErrorKind> error;
  std::string message;
};

struct VerifyReport {
  std::string id;
  Rational order;
  RecordStatus status = RecordStatus::ExpectedPass;
  Evidence result;
  // Known typos only: how the printed reading fared.
  std::optional<Evidence> printed;
  double millis = 0;

  bool passed() const { return result.outcome == Outcome::Pass; }
};

// Verifies lhs = rhs at order (the record's default when absent). A known-typo
// record passes when the corrected reading holds and the printed one does not.
VerifyReport run_record(const IdentityRecord& r, const std::optional<Rational>& order = std::nullopt);
// Throws UnknownIdentity.
VerifyReport run_identity(const Registry& reg, std::string_view id, const std::optional<Rational>& order = std::nullopt);
// Runs the given ids (all when empty) on up to `threads` workers; reports
// come back in registry order.
std::vector<VerifyReport> run_all(const Registry& reg, const std::optional<Rational>& order = std::nullopt,
                                  const std::vector<std::string>& ids = {}, unsigned threads = 0);

// One JSON object per line.
std::string to_record_line(const VerifyReport& r, bool with_time = true);
std::string format_table(const std::vector<VerifyReport>& reports);

}  // namespace qhecke
