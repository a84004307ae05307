#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swapshop/analysis.hpp"

namespace swapshop {

// key=value text blocks. Each section opens with "[name]"; check() lines
// read "check name=PASS|FAIL"; finish() writes the closing result line,
// naming the first failed check.
class Report {
 public:
  explicit Report(std::ostream& out) : out_(&out) {}

  void section(const std::string& name);
  void field(const std::string& key, const std::string& value);
  void field(const std::string& key, double value);
  void field(const std::string& key, long long value);
  void field(const std::string& key, int value) { field(key, static_cast<long long>(value)); }
  void field(const std::string& key, bool value);
  bool check(const std::string& name, bool ok);
  void finish();

  bool passed() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::ostream* out_;
  std::vector<std::string> failures_;
};

std::string join_ids(const std::vector<int>& ids);

void report_isolation(Report& rep, const IsolationReport& iso,
                      const std::vector<ReassignmentCheck>& checks);
void report_deletion(Report& rep, const DeletionResult& del);
void report_certifier(Report& rep, const CertifierReport& cert);

}  // namespace swapshop
