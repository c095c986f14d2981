// Copyright 2026 The SeqMatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "seqmatch/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "seqmatch/errors.hpp"
#include "seqmatch/exponents.hpp"
#include "seqmatch/seq_known.hpp"

namespace seqmatch {
namespace {

constexpr std::uint32_t kRightSubstream = 0x80000000u;

std::vector<double> cdf_of(const Distribution& d) {
  std::vector<double> cdf(d.alphabet_size());
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t s = 0; s < cdf.size(); ++s) {
    acc += d[s];
    cdf[s] = acc;
    if (d[s] > 0.0) last = s;
  }
  for (std::size_t s = last; s < cdf.size(); ++s) cdf[s] = 1.0;
  return cdf;
}

std::size_t sample(const std::vector<double>& cdf, double u) {
  std::size_t s = 0;
  while (!(u < cdf[s])) ++s;
  return s;
}

struct TauStats {
  double mean = 0.0;
  double se = 0.0;
  std::uint64_t max = 0;
  double p_start = 0.0;
  std::vector<std::uint64_t> values;
};

TauStats tau_stats(std::span<const TrialRecord> records, std::uint64_t horizon) {
  TauStats st;
  std::uint64_t at_start = 0;
  for (const auto& r : records) {
    if (r.outcome == Outcome::kTruncated) continue;
    st.values.push_back(r.tau);
    st.max = std::max(st.max, r.tau);
    if (r.tau + 1 == horizon) ++at_start;
  }
  const double n = static_cast<double>(st.values.size());
  if (st.values.empty()) return st;
  double sum = 0.0;
  for (auto v : st.values) sum += static_cast<double>(v);
  st.mean = sum / n;
  double ss = 0.0;
  for (auto v : st.values) ss += (static_cast<double>(v) - st.mean) * (static_cast<double>(v) - st.mean);
  st.se = st.values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  st.p_start = static_cast<double>(at_start) / n;
  return st;
}

nlohmann::json rate_json(const RateEstimate& r) {
  return {{"count", r.count}, {"rate", r.rate}, {"lo", r.lo}, {"hi", r.hi}, {"one_sided", r.one_sided}};
}

const Thresholds& require_thresholds(const TestSpec& test) {
  if (!test.thresholds) throw ConfigError("unknown-k tests need thresholds");
  return *test.thresholds;
}

}  // namespace

const char* test_kind_name(TestKind kind) {
  switch (kind) {
    case TestKind::kSeqKnown:
      return "seq_known";
    case TestKind::kFlKnown:
      return "fl_known";
    case TestKind::kFlZhou:
      return "fl_zhou";
    case TestKind::kSeqUnknown:
      return "seq_unknown";
    case TestKind::kFlUnknown:
      return "fl_unknown";
  }
  return "unknown";
}

TestKind test_kind_from_name(const std::string& name) {
  for (auto k : {TestKind::kSeqKnown, TestKind::kFlKnown, TestKind::kFlZhou, TestKind::kSeqUnknown,
                 TestKind::kFlUnknown}) {
    if (name == test_kind_name(k)) return k;
  }
  throw ConfigError("unknown test kind '" + name + "'");
}

bool is_sequential(TestKind kind) { return kind == TestKind::kSeqKnown || kind == TestKind::kSeqUnknown; }

bool is_known_k(TestKind kind) {
  return kind == TestKind::kSeqKnown || kind == TestKind::kFlKnown || kind == TestKind::kFlZhou;
}

TrialStream::TrialStream(const SourceModel& model, std::uint64_t master_seed, std::uint64_t trial_index)
    : rng_(master_seed, trial_index) {
  for (const auto& d : model.left()) left_cdf_.push_back(cdf_of(d));
  for (const auto& d : model.right()) right_cdf_.push_back(cdf_of(d));
}

std::size_t TrialStream::draw(Side side, std::size_t sequence, std::uint64_t position) {
  if (side == Side::kLeft) {
    return sample(left_cdf_.at(sequence), rng_.uniform(static_cast<std::uint32_t>(sequence), position));
  }
  return sample(right_cdf_.at(sequence),
                rng_.uniform(kRightSubstream | static_cast<std::uint32_t>(sequence), position));
}

TrialSequences generate_trial(const SourceModel& model, std::uint64_t master_seed, std::uint64_t trial_index,
                              std::uint64_t max_n) {
  if (max_n < 1) throw DomainError("generate_trial: max_n must be >= 1");
  TrialStream stream(model, master_seed, trial_index);
  TrialSequences out;
  const std::uint64_t xi = model.rates().xi(max_n);
  const std::uint64_t chi = model.rates().chi(max_n);
  for (std::size_t i = 0; i < model.dims().m1; ++i) {
    auto& seq = out.left.emplace_back();
    for (std::uint64_t p = 0; p < xi; ++p) seq.push_back(stream.draw(Side::kLeft, i, p));
  }
  for (std::size_t j = 0; j < model.dims().m2; ++j) {
    auto& seq = out.right.emplace_back();
    for (std::uint64_t p = 0; p < chi; ++p) seq.push_back(stream.draw(Side::kRight, j, p));
  }
  return out;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kCorrect:
      return "correct";
    case Outcome::kMismatch:
      return "mismatch";
    case Outcome::kFalseReject:
      return "false_reject";
    case Outcome::kFalseAlarm:
      return "false_alarm";
    case Outcome::kTruncated:
      return "truncated";
  }
  return "unknown";
}

Outcome classify(const HypothesisIndex& truth, const HypothesisIndex& decided) {
  if (truth.is_reject()) return decided.is_reject() ? Outcome::kCorrect : Outcome::kFalseAlarm;
  if (decided == truth) return Outcome::kCorrect;
  return decided.is_reject() ? Outcome::kFalseReject : Outcome::kMismatch;
}

TrialRecord run_trial(const SourceModel& model, const HypothesisSpace& space, const TestSpec& test,
                      std::uint64_t horizon, std::uint64_t master_seed, std::uint64_t trial_index) {
  TrialStream stream(model, master_seed, trial_index);
  GrowingDatabase db(model.dims(), model.alphabet_size(), model.rates(), stream);
  const HypothesisIndex truth = model.truth_index(space);
  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.horizon = horizon;
  try {
    if (is_known_k(test.kind)) {
      if (model.is_null()) throw ModelError("known-k tests need a model with a true matching");
      const KnownKTest kt(space, truth.k(), model.alphabet_size(), model.rates());
      KnownKVerdict v;
      if (test.kind == TestKind::kSeqKnown) {
        v = kt.run_sequential(db, horizon, test.max_steps);
      } else {
        db.advance_to(horizon);
        v = test.kind == TestKind::kFlKnown ? kt.run_fixed_length(db.snapshot())
                                            : kt.run_zhou(db.snapshot(), test.zhou_lambda);
      }
      rec.decided = v.decided;
      rec.tau = v.stopping_time;
    } else {
      const Thresholds& th = require_thresholds(test);
      UnknownKVerdict v;
      if (test.kind == TestKind::kSeqUnknown) {
        v = run_sequential_unknown(space, db, th, horizon, test.max_steps);
      } else {
        db.advance_to(horizon);
        v = run_fixed_length_unknown(space, db.snapshot(), th);
      }
      rec.decided = v.decided;
      rec.tau = v.stopping_time;
    }
    rec.outcome = classify(truth, rec.decided);
  } catch (const TruncatedRunError& e) {
    rec.decided = HypothesisIndex::reject();
    rec.tau = e.last_n();
    rec.outcome = Outcome::kTruncated;
  }
  return rec;
}

RateEstimate wilson_interval(std::uint64_t count, std::uint64_t trials) {
  if (trials == 0) throw DomainError("wilson_interval: no trials");
  if (count > trials) throw DomainError("wilson_interval: count exceeds trials");
  RateEstimate r;
  const double n = static_cast<double>(trials);
  r.count = count;
  r.rate = static_cast<double>(count) / n;
  if (count == 0) {
    constexpr double z = 1.6448536269514722;  // one-sided 95%
    r.one_sided = true;
    r.lo = 0.0;
    r.hi = z * z / (n + z * z);
    return r;
  }
  constexpr double z = 1.959963984540054;
  const double p = r.rate;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  r.lo = std::max(0.0, centre - half);
  r.hi = std::min(1.0, centre + half);
  return r;
}

std::vector<TrialRecord> run_trials(const SourceModel& model, const TestSpec& test, const CampaignSpec& campaign) {
  if (campaign.trials < 1) throw DomainError("campaign needs at least one trial");
  if (campaign.horizons.empty()) throw DomainError("campaign needs at least one horizon");
  for (auto n : campaign.horizons) {
    if (n < 2) throw DomainError("horizons must be >= 2");
  }
  const HypothesisSpace space(model.dims());
  if (is_known_k(test.kind) && model.is_null()) throw ModelError("known-k tests need a model with a true matching");
  if (!is_known_k(test.kind)) require_thresholds(test);

  const std::uint64_t total = campaign.trials * campaign.horizons.size();
  std::vector<TrialRecord> records(total);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t job = next.fetch_add(1);
      if (job >= total) return;
      const std::uint64_t h = job / campaign.trials;
      const std::uint64_t t = job % campaign.trials;
      try {
        records[job] = run_trial(model, space, test, campaign.horizons[h], campaign.master_seed, t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
    }
  };
  const unsigned threads = std::max(1u, campaign.parallelism);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

nlohmann::json theory_for(const SourceModel& model, const TestSpec& test) {
  const HypothesisSpace space(model.dims());
  nlohmann::json j = nlohmann::json::object();
  switch (test.kind) {
    case TestKind::kSeqKnown:
      j["E_s"] = exponent_E_s(model, space);
      break;
    case TestKind::kFlKnown:
    case TestKind::kFlZhou:
      j["E_f"] = exponent_E_f(model, space);
      j["E_s"] = exponent_E_s(model, space);
      break;
    case TestKind::kSeqUnknown: {
      const Thresholds& th = require_thresholds(test);
      if (model.is_null()) {
        const auto g0 = quantity_G0(model);
        j["G0"] = g0;
        j["false_alarm_bound"] = exponent_E_r(model, space, th.lambda1());
        j["conditions"] = {{"lambda1_below_G0", th.lambda1() < g0.value.to_double()}};
      } else {
        const auto lam = quantity_Lambda(model, space);
        const auto kap = quantity_kappa(model, space);
        const auto g = exponent_G(model, space, th.lambda2());
        j["Lambda"] = lam;
        j["kappa"] = kap;
        j["G(lambda2)"] = g;
        j["mismatch_bound"] = std::min(g.value.to_double(), th.lambda3());
        j["false_reject_bound"] = th.lambda1();
        j["conditions"] = {{"lambda3_below_Lambda", th.lambda3() < lam.value.to_double()},
                           {"lambda2_below_kappa", th.lambda2() < kap.value.to_double()}};
      }
      break;
    }
    case TestKind::kFlUnknown: {
      const Thresholds& th = require_thresholds(test);
      if (model.is_null()) {
        j["false_alarm_bound"] = exponent_E_r(model, space, th.lambda2());
      } else {
        const auto g = exponent_G(model, space, th.lambda2());
        const auto f = exponent_F(model, space, th.lambda3());
        j["G(lambda2)"] = g;
        j["F(lambda3)"] = f;
        j["mismatch_bound"] = std::min(g.value.to_double(), th.lambda3());
        j["false_reject_bound"] =
            std::min({th.lambda2(), th.lambda3(), g.value.to_double(), f.value.to_double()});
      }
      break;
    }
  }
  return j;
}

SimulationReport run_campaign(const SourceModel& model, const TestSpec& test, const CampaignSpec& campaign,
                              const std::string& config_hash, bool attach_theory) {
  SimulationReport rep;
  rep.config_hash = config_hash;
  rep.test = test;
  rep.campaign = campaign;
  std::sort(rep.campaign.horizons.begin(), rep.campaign.horizons.end());
  const auto records = run_trials(model, test, rep.campaign);

  const std::uint64_t t = rep.campaign.trials;
  for (std::size_t h = 0; h < rep.campaign.horizons.size(); ++h) {
    const std::span<const TrialRecord> rs(records.data() + h * t, t);
    ReportRow row;
    row.horizon = rep.campaign.horizons[h];
    row.trials = t;
    std::uint64_t mm = 0;
    std::uint64_t fr = 0;
    std::uint64_t fa = 0;
    for (const auto& r : rs) {
      switch (r.outcome) {
        case Outcome::kCorrect:
          ++row.correct;
          break;
        case Outcome::kMismatch:
          ++mm;
          break;
        case Outcome::kFalseReject:
          ++fr;
          break;
        case Outcome::kFalseAlarm:
          ++fa;
          break;
        case Outcome::kTruncated:
          ++row.truncated;
          break;
      }
    }
    row.mismatch = wilson_interval(mm, t);
    row.false_reject = wilson_interval(fr, t);
    row.false_alarm = wilson_interval(fa, t);
    row.error = wilson_interval(mm + fr + fa, t);
    const TauStats st = tau_stats(rs, row.horizon);
    row.mean_tau = st.mean;
    row.se_tau = st.se;
    row.max_tau = st.max;
    if (is_sequential(test.kind)) {
      row.p_tau_start = st.p_start;
      row.tau_flag = st.mean > static_cast<double>(row.horizon) + 3.0 * st.se;
    }
    rep.rows.push_back(row);
  }

  // Exponent slope of the combined error rate.
  const double floor_rate = 1.0 / (2.0 * static_cast<double>(t));
  std::vector<double> xs;
  std::vector<double> ys;
  double last_uncensored = -1.0;
  for (const auto& row : rep.rows) {
    const bool censored = row.error.count == 0;
    const double rate = std::max(row.error.rate, floor_rate);
    const double n = static_cast<double>(row.horizon);
    SlopePoint p{row.horizon, -std::log(rate) / n, censored};
    if (!censored) {
      if (p.estimate < last_uncensored) rep.slope.monotone = false;
      last_uncensored = p.estimate;
      xs.push_back(n);
      ys.push_back(-std::log(rate));
    }
    rep.slope.points.push_back(p);
  }
  if (!rep.slope.points.empty()) rep.slope.largest_n = rep.slope.points.back();
  if (xs.size() >= 2) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx > 0.0) rep.slope.fitted_slope = sxy / sxx;
  }
  rep.theory = attach_theory ? theory_for(model, test) : nlohmann::json::object();
  return rep;
}

std::vector<AuditRow> stopping_time_audit(const SourceModel& model, const TestSpec& test,
                                          const CampaignSpec& campaign) {
  if (!is_sequential(test.kind)) throw DomainError("stopping_time_audit: needs a sequential test");
  CampaignSpec c = campaign;
  std::sort(c.horizons.begin(), c.horizons.end());
  const auto records = run_trials(model, test, c);
  std::vector<AuditRow> out;
  for (std::size_t h = 0; h < c.horizons.size(); ++h) {
    const std::span<const TrialRecord> rs(records.data() + h * c.trials, c.trials);
    TauStats st = tau_stats(rs, c.horizons[h]);
    AuditRow row;
    row.horizon = c.horizons[h];
    row.mean_tau = st.mean;
    row.se_tau = st.se;
    row.max_tau = st.max;
    row.p_tau_start = st.p_start;
    if (!st.values.empty()) {
      std::sort(st.values.begin(), st.values.end());
      const std::size_t n = st.values.size();
      row.median_tau = st.values[(n - 1) / 2];
      row.q90_tau = st.values[static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(n))) - 1];
    }
    row.flagged = st.mean > static_cast<double>(row.horizon) + 3.0 * st.se;
    out.push_back(row);
  }
  return out;
}

nlohmann::json report_to_json(const SimulationReport& report) {
  nlohmann::json j;
  j["config_hash"] = report.config_hash;
  nlohmann::json test;
  test["kind"] = test_kind_name(report.test.kind);
  if (report.test.kind == TestKind::kFlZhou) test["zhou_lambda"] = report.test.zhou_lambda;
  if (report.test.thresholds) {
    test["thresholds"] = {{"lambda1", report.test.thresholds->lambda1()},
                          {"lambda2", report.test.thresholds->lambda2()},
                          {"lambda3", report.test.thresholds->lambda3()}};
  }
  j["test"] = test;
  j["trials"] = report.campaign.trials;
  j["master_seed"] = report.campaign.master_seed;
  j["horizons"] = report.campaign.horizons;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : report.rows) {
    j["rows"].push_back({{"N", r.horizon},
                         {"trials", r.trials},
                         {"correct", r.correct},
                         {"truncated", r.truncated},
                         {"mismatch", rate_json(r.mismatch)},
                         {"false_reject", rate_json(r.false_reject)},
                         {"false_alarm", rate_json(r.false_alarm)},
                         {"error", rate_json(r.error)},
                         {"mean_tau", r.mean_tau},
                         {"se_tau", r.se_tau},
                         {"max_tau", r.max_tau},
                         {"p_tau_start", r.p_tau_start},
                         {"tau_flag", r.tau_flag}});
  }
  nlohmann::json slope;
  slope["points"] = nlohmann::json::array();
  for (const auto& p : report.slope.points) {
    slope["points"].push_back({{"N", p.horizon}, {"estimate", p.estimate}, {"censored", p.censored}});
  }
  slope["fitted_slope"] = report.slope.fitted_slope ? nlohmann::json(*report.slope.fitted_slope) : nlohmann::json();
  if (report.slope.largest_n) {
    slope["largest_n"] = {{"N", report.slope.largest_n->horizon},
                          {"estimate", report.slope.largest_n->estimate},
                          {"censored", report.slope.largest_n->censored}};
  }
  slope["monotone"] = report.slope.monotone;
  j["slope"] = slope;
  j["theory"] = report.theory;
  return j;
}

std::string report_to_csv(const SimulationReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "N,error_type,count,trials,rate,lo,hi,mean_tau,se_tau\n";
  for (const auto& r : report.rows) {
    const std::pair<const char*, const RateEstimate*> kinds[] = {
        {"mismatch", &r.mismatch}, {"false_reject", &r.false_reject}, {"false_alarm", &r.false_alarm},
        {"error", &r.error}};
    for (const auto& [name, est] : kinds) {
      os << r.horizon << ',' << name << ',' << est->count << ',' << r.trials << ',' << est->rate << ',' << est->lo
         << ',' << est->hi << ',' << r.mean_tau << ',' << r.se_tau << '\n';
    }
    os << r.horizon << ",truncated," << r.truncated << ',' << r.trials << ','
       << static_cast<double>(r.truncated) / static_cast<double>(r.trials) << ",,," << r.mean_tau << ','
       << r.se_tau << '\n';
  }
  return os.str();
}

}  // namespace seqmatch
