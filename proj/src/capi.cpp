#include "mcobs/mcobs.h"

#include <cmath>
#include <limits>
#include <new>
#include <string>

#include <json.hpp>

#include "mcobs/circuits.hpp"
#include "mcobs/phase_space.hpp"
#include "mcobs/states.hpp"
#include "mcobs/verify.hpp"

using namespace mcobs;
using nlohmann::json;

struct mco_state {
  State state;
  TailReport tail;
  bool tail_warning = false;
};

struct mco_distribution {
  OutcomeDistribution d;
  std::vector<std::pair<int, double>> entries;

  explicit mco_distribution(OutcomeDistribution dist) : d(std::move(dist)) {
    entries.assign(d.probabilities().begin(), d.probabilities().end());
  }
};

namespace {

thread_local std::string g_last_error;

mco_status fail(mco_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename F>
mco_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return MCO_OK;
  } catch (const Error& e) {
    return fail(static_cast<mco_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MCO_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(MCO_INTERNAL_ERROR, e.what());
  }
}

void require(const void* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " is null");
}

double gate(double tail_max) {
  return tail_max < 0.0 ? std::numeric_limits<double>::infinity() : tail_max;
}

CircuitSpec circuit_from(const char* text) {
  require(text, "circuit");
  const std::string s(text);
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && s[first] == '{') return parse_circuit(s);
  return preset_circuit(s);
}

mco_state* wrap(GatedState g) {
  return new mco_state{std::move(g.state), g.tail, g.tail_warning};
}

MultiCopyOptions options(double tail_max) {
  MultiCopyOptions o;
  o.tail_max = gate(tail_max);
  return o;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  s.copy(out, s.size());
  out[s.size()] = '\0';
  return out;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

extern "C" {

const char* mco_last_error(void) { return g_last_error.c_str(); }

const char* mco_version(void) { return "0.1.0"; }

void mco_string_free(char* s) { delete[] s; }

mco_status mco_state_from_json(const char* spec_json, int cutoff, double tail_max, int strict,
                               mco_state** out) {
  return guarded([&] {
    require(spec_json, "spec_json");
    require(out, "out");
    *out = nullptr;
    const MakeOptions opts{gate(tail_max), strict != 0};
    *out = wrap(make_state(parse_state_spec(spec_json), cutoff, opts));
  });
}

void mco_state_free(mco_state* s) { delete s; }

mco_status mco_state_info_get(const mco_state* s, mco_state_info* out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    const FockTruncation& t = truncation_of(s->state);
    out->modes = t.modes();
    out->cutoff = t.cutoff();
    out->pure = is_pure(s->state) ? 1 : 0;
    out->trace = weight(s->state);
    out->tail_mass = s->tail.tail_mass;
    out->discarded_mass = s->tail.discarded_mass;
    out->tail_warning = s->tail_warning ? 1 : 0;
  });
}

mco_status mco_state_displace(const mco_state* s, double re, double im, int new_cutoff,
                              double tail_max, mco_state** out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    *out = nullptr;
    if (truncation_of(s->state).modes() != 1)
      throw DimensionError("displace expects a one-mode state");
    const int c = new_cutoff > 0 ? new_cutoff : truncation_of(s->state).cutoff();
    GatedState g = apply_unitary(Displace{0, cplx(re, im)}, with_cutoff(s->state, c), gate(tail_max));
    g.state = normalized(g.state);
    g.tail.discarded_mass = std::max(g.tail.discarded_mass, s->tail.discarded_mass);
    *out = wrap(std::move(g));
  });
}

mco_status mco_state_covariance(const mco_state* s, mco_covariance* out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    const CovarianceState c = covariance_of(s->state);
    const SymplecticSummary sum = symplectic_summary(c);
    out->gamma_xx = c.gamma(0, 0);
    out->gamma_xp = c.gamma(0, 1);
    out->gamma_pp = c.gamma(1, 1);
    out->mean_x = c.mean(0);
    out->mean_p = c.mean(1);
    out->det_gamma = sum.det_gamma;
    out->nu = sum.nu;
    out->sr_satisfied = sr_check(c).satisfied ? 1 : 0;
  });
}

mco_status mco_state_tensor_power(const mco_state* s, int copies, int box_cutoff,
                                  mco_state** out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    *out = nullptr;
    const State one = box_cutoff > 0 ? with_cutoff(s->state, box_cutoff) : s->state;
    State p = tensor_power(one, copies);
    const TailReport tail = tail_mass(p);
    *out = new mco_state{std::move(p), {tail.tail_mass, s->tail.discarded_mass}, s->tail_warning};
  });
}

mco_status mco_circuit_run(const char* circuit, const mco_state* input, double tail_max,
                           mco_state** out) {
  return guarded([&] {
    require(input, "input");
    require(out, "out");
    *out = nullptr;
    *out = wrap(run_circuit(circuit_from(circuit), input->state, gate(tail_max)));
  });
}

mco_status mco_circuit_info(const char* circuit, int* modes, int* passive, int* mode_a,
                            int* mode_b) {
  return guarded([&] {
    const CircuitSpec c = circuit_from(circuit);
    if (modes) *modes = c.modes;
    if (passive) *passive = c.passive() ? 1 : 0;
    if (mode_a) *mode_a = c.readout[0] + 1;
    if (mode_b) *mode_b = c.readout[1] + 1;
  });
}

mco_status mco_distribution_lz(const mco_state* s, mco_route route, double tail_max,
                               mco_distribution** out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    *out = nullptr;
    const MultiCopyOptions o = options(tail_max);
    OutcomeDistribution d = route == MCO_ROUTE_CIRCUIT
                                ? circuit_distribution(fig1_two_copy(), s->state, o)
                                : outcome_distribution_lz(s->state, o);
    d.tail.discarded_mass = s->tail.discarded_mass;
    *out = new mco_distribution(std::move(d));
  });
}

mco_status mco_distribution_m(const mco_state* s, mco_route route, double tail_max,
                              mco_distribution** out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    *out = nullptr;
    const MRoute r = route == MCO_ROUTE_CIRCUIT ? MRoute::kCircuit : MRoute::kDiagonalization;
    OutcomeDistribution d = outcome_distribution_m(s->state, r, options(tail_max));
    d.tail.discarded_mass = s->tail.discarded_mass;
    *out = new mco_distribution(std::move(d));
  });
}

mco_status mco_distribution_circuit(const char* circuit, const mco_state* s, int mode_a,
                                    int mode_b, double tail_max, mco_distribution** out) {
  return guarded([&] {
    require(s, "state");
    require(out, "out");
    *out = nullptr;
    CircuitSpec c = circuit_from(circuit);
    if (mode_a != 0 || mode_b != 0) c.readout = {mode_a - 1, mode_b - 1};
    OutcomeDistribution d = circuit_distribution(c, s->state, options(tail_max));
    d.tail.discarded_mass = s->tail.discarded_mass;
    *out = new mco_distribution(std::move(d));
  });
}

mco_status mco_distribution_photon_difference(const mco_state* box, int mode_a, int mode_b,
                                              mco_distribution** out) {
  return guarded([&] {
    require(box, "state");
    require(out, "out");
    *out = nullptr;
    *out = new mco_distribution(
        photon_difference_distribution(box->state, mode_a - 1, mode_b - 1).distribution);
  });
}

mco_status mco_distribution_from_arrays(const int* twice_m, const double* p, size_t n,
                                        mco_distribution** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    if (n > 0) {
      require(twice_m, "twice_m");
      require(p, "p");
    }
    OutcomeDistribution d;
    for (size_t i = 0; i < n; ++i) {
      if (!std::isfinite(p[i]) || p[i] < 0.0)
        throw InvalidArgument("probability " + std::to_string(i) + " is negative or not finite");
      d.add(twice_m[i], p[i]);
    }
    *out = new mco_distribution(std::move(d));
  });
}

void mco_distribution_free(mco_distribution* d) { delete d; }

size_t mco_distribution_size(const mco_distribution* d) { return d ? d->entries.size() : 0; }

mco_status mco_distribution_entry(const mco_distribution* d, size_t i, int* twice_m, double* p) {
  return guarded([&] {
    require(d, "distribution");
    if (i >= d->entries.size()) throw InvalidArgument("entry index out of range");
    if (twice_m) *twice_m = d->entries[i].first;
    if (p) *p = d->entries[i].second;
  });
}

double mco_distribution_entropy(const mco_distribution* d) {
  return d ? d->d.entropy() : std::nan("");
}

double mco_distribution_variance(const mco_distribution* d) {
  return d ? d->d.variance() : std::nan("");
}

double mco_distribution_tail_mass(const mco_distribution* d) {
  return d ? d->d.tail.worst() : std::nan("");
}

double mco_distribution_pruned_mass(const mco_distribution* d) {
  return d ? d->d.pruned_mass : std::nan("");
}

double mco_distribution_total_variation(const mco_distribution* a, const mco_distribution* b) {
  return a && b ? total_variation(a->d, b->d) : std::nan("");
}

mco_status mco_distribution_sample(const mco_distribution* d, int64_t shots, uint64_t seed,
                                   int64_t* counts) {
  return guarded([&] {
    require(d, "distribution");
    require(counts, "counts");
    const auto drawn = sample_outcomes(d->d, shots, seed);
    for (size_t i = 0; i < d->entries.size(); ++i) {
      const auto it = drawn.find(d->entries[i].first);
      counts[i] = it == drawn.end() ? 0 : it->second;
    }
  });
}

mco_status mco_gaussian_entropies(double nu, double* h_lz, double* h_xp) {
  return guarded([&] {
    const GaussianEntropies g = gaussian_entropy_closed_forms(nu);
    if (h_lz) *h_lz = g.h_lz;
    if (h_xp) *h_xp = g.h_xp;
  });
}

mco_status mco_e_function(double mean_n, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = e_function(mean_n);
  });
}

mco_status mco_verify(const char* config_json, char** report_json, int* failed,
                      int* inconclusive) {
  return guarded([&] {
    require(report_json, "report_json");
    *report_json = nullptr;
    VerifyConfig cfg;
    if (config_json && *config_json) {
      json j;
      try {
        j = json::parse(config_json);
      } catch (const json::parse_error& e) {
        throw ParseError(std::string("verify config: ") + e.what());
      }
      try {
        cfg.algebra_cutoff = j.value("algebra_cutoff", cfg.algebra_cutoff);
        cfg.cutoff = j.value("cutoff", cfg.cutoff);
        cfg.tol = j.value("tol", cfg.tol);
        cfg.tail_max = j.value("tail_max", cfg.tail_max);
        cfg.squeeze_r = j.value("squeeze_r", cfg.squeeze_r);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.random_states = j.value("random_states", cfg.random_states);
        const std::string conv = j.value("convention", std::string("reflection"));
        if (conv == "rotation")
          cfg.convention = BsConvention::kRotation;
        else if (conv != "reflection")
          throw ParseError("verify config field 'convention': expected reflection or rotation");
      } catch (const json::exception& e) {
        throw ParseError(std::string("verify config: ") + e.what());
      }
    }
    const VerifyReport r = run_verification(cfg);
    json checks = json::array();
    int nf = 0, ni = 0;
    for (const auto& c : r.checks) {
      nf += c.status == CheckStatus::kFail;
      ni += c.status == CheckStatus::kInconclusive;
      checks.push_back({{"name", c.name},
                        {"status", status_name(c.status)},
                        {"residual", number_or_null(c.residual)},
                        {"tolerance", c.tolerance},
                        {"detail", c.detail}});
    }
    const json out = {{"checks", checks},
                      {"failed", nf},
                      {"inconclusive", ni},
                      {"passed", static_cast<int>(r.checks.size()) - nf - ni}};
    if (failed) *failed = nf;
    if (inconclusive) *inconclusive = ni;
    *report_json = copy_string(out.dump(2));
  });
}

}  // extern "C"
