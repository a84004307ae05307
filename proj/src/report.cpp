#include "swapshop/report.hpp"

#include <ostream>

namespace swapshop {

void Report::section(const std::string& name) { *out_ << '[' << name << "]\n"; }

void Report::field(const std::string& key, const std::string& value) {
  *out_ << key << '=' << value << '\n';
}

void Report::field(const std::string& key, double value) { field(key, format_number(value)); }

void Report::field(const std::string& key, long long value) {
  field(key, std::to_string(value));
}

void Report::field(const std::string& key, bool value) {
  field(key, std::string(value ? "true" : "false"));
}

bool Report::check(const std::string& name, bool ok) {
  *out_ << "check " << name << '=' << (ok ? "PASS" : "FAIL") << '\n';
  if (!ok) failures_.push_back(name);
  return ok;
}

void Report::finish() {
  if (passed()) {
    *out_ << "result=PASS\n";
  } else {
    *out_ << "result=FAIL first_failure=" << failures_.front() << '\n';
  }
}

std::string join_ids(const std::vector<int>& ids) {
  if (ids.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(ids[i]);
  }
  return s;
}

void report_isolation(Report& rep, const IsolationReport& iso,
                      const std::vector<ReassignmentCheck>& checks) {
  rep.section("isolation");
  rep.field("epsilon", iso.epsilon);
  rep.field("isolated_regions", static_cast<long long>(iso.isolated_regions.size()));
  for (const auto& r : iso.isolated_regions) {
    rep.field("region f0=" + std::to_string(r.f0) + " L0", join_ids(r.L0));
  }
  std::string pairs;
  for (const auto& [f, l] : iso.one_one_pairs) {
    pairs += (pairs.empty() ? "" : ",") + std::to_string(f) + ":" + std::to_string(l);
  }
  rep.field("one_one_pairs", pairs.empty() ? std::string("-") : pairs);
  rep.field("k_bar", iso.k_bar);
  rep.field("good_clients", iso.num_good());
  rep.field("bad_clients", static_cast<int>(iso.good.size()) - iso.num_good());
  rep.check("isolation.l_sides_disjoint", iso.l_sides_disjoint);
  for (const auto& c : checks) {
    const std::string name = "isolation." + c.direction + ".f0=" + std::to_string(c.f0);
    rep.field(name + ".lhs", c.lhs);
    rep.field(name + ".rhs", c.rhs);
    rep.check(name, c.holds);
  }
}

void report_deletion(Report& rep, const DeletionResult& del) {
  rep.section("deletion");
  rep.field("epsilon", del.epsilon);
  rep.field("p", del.p);
  rep.field("k_bar", del.k_bar);
  rep.field("g_tilde", join_ids(del.g_tilde));
  std::string phi, colors;
  for (const auto& [f, t] : del.phi) {
    phi += (phi.empty() ? "" : ",") + std::to_string(f) + "->" + std::to_string(t);
  }
  for (const auto& [f, c] : del.coloring) {
    colors += (colors.empty() ? "" : ",") + std::to_string(f) + ":" + std::to_string(c);
  }
  rep.field("phi", phi.empty() ? std::string("-") : phi);
  rep.field("coloring", colors.empty() ? std::string("-") : colors);
  rep.field("color_class", join_ids(del.color_class));
  rep.field("parts", static_cast<long long>(del.parts.size()));
  rep.field("S0", join_ids(del.S0));
  rep.field("size_bound", del.size_bound);
  rep.field("cost_L", del.cost_L);
  rep.field("cost_before", del.cost_before);
  rep.field("cost_after", del.cost_after);
  rep.field("surrogate_cost", del.surrogate_cost);
  rep.field("bound_rhs", del.bound_rhs);
  rep.field("redirect_surrogate_increase", del.redirect_surrogate_increase);
  rep.field("redirect_fractional_increase", del.redirect_fractional_increase);
  rep.field("redirect_bound", del.redirect_bound);
  rep.field("redirect_ok", del.redirect_ok());
  rep.field("glob2loc_counting", del.glob2loc_counting);
  rep.field("vacuous", del.vacuous);
  rep.check("deletion.size", del.size_ok);
  rep.check("deletion.cost", del.cost_ok);
  rep.check("deletion.dichromatic", del.dichromatic);
  rep.check("deletion.soundness", del.sound);
}

void report_certifier(Report& rep, const CertifierReport& cert) {
  rep.section("ufl-chain");
  rep.field("epsilon", cert.epsilon);
  rep.field("r", cert.r);
  rep.field("regions", cert.regions);
  for (const auto& rec : cert.records) {
    const std::string k = "region." + std::to_string(rec.region) + ".";
    rep.field(k + "g_prime", rec.g_prime);
    rep.field(k + "l_local", rec.l_local);
    rep.field(k + "symdiff", rec.symdiff);
    if (rec.empty_mixed) {
      rep.field(k + "mixed_cost", std::string("empty"));
    } else {
      rep.field(k + "mixed_cost", rec.mixed_cost);
      rep.field(k + "exchange_slack", rec.exchange_slack);
    }
    rep.field(k + "local_slack", rec.local_slack);
  }
  rep.field("cost_L", cert.cost_L);
  rep.field("cost_G", cert.cost_G);
  rep.field("cost_G_prime", cert.cost_G_prime);
  rep.field("sum_g_prime", cert.sum_g_prime);
  rep.field("sum_boundary", cert.sum_boundary);
  rep.field("max_symdiff", cert.max_symdiff);
  rep.field("locally_optimal", cert.locally_optimal);
  rep.field("verified_swap_size", cert.verified_swap_size);
  rep.field("division_c1", cert.division_c1);
  rep.field("division_c2", cert.division_c2);
  rep.field("c1_fit", cert.c1_fit);
  rep.field("c2_fit", cert.c2_fit);
  rep.field("summed_lhs", cert.summed_lhs);
  rep.field("summed_rhs", cert.summed_rhs);
  rep.field("ratio", cert.ratio);
  if (cert.ratio_bound) {
    rep.field("ratio_bound", *cert.ratio_bound);
  } else {
    rep.field("ratio_bound", std::string("vacuous"));
  }
  rep.check("ufl.symdiff_le_r", cert.symdiff_ok);
  rep.check("ufl.client_bounds", cert.clients_ok);
  rep.check("ufl.exchange", cert.exchange_ok);
  rep.check("ufl.local_inequality", cert.local_ineq_ok);
  rep.check("ufl.augmented_size", cert.size_ok);
  rep.check("ufl.chain", cert.chain_ok);
}

}  // namespace swapshop
