#include "pavf/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "pavf/averaged_gradient.hpp"
#include "pavf/errors.hpp"
#include "pavf/integrators.hpp"
#include "pavf/models/henon_heiles.hpp"
#include "pavf/models/kgs.hpp"

namespace pavf::harness {

namespace {

using Rng = std::mt19937_64;

struct Case {
  std::string label;
  HamiltonianSystem sys;
  Grouping grouping;
  std::function<State(Rng&)> sample;
  std::size_t samples;
  std::size_t boundary_period = 0;  // kgs: boundary nodes are pinned to zero
};

State sample_hh(Rng& rng) {
  // inside the bounded well, away from the saddles
  std::uniform_real_distribution<double> d(-0.3, 0.3);
  return State{d(rng), d(rng), d(rng), d(rng)};
}

kgs::KGSState sample_kgs_fields(Rng& rng, std::size_t nodes, double amplitude) {
  std::uniform_real_distribution<double> d(-amplitude, amplitude);
  kgs::KGSState z(nodes);
  for (auto* f : {&z.U, &z.V, &z.P, &z.Q})
    for (std::size_t j = 1; j + 1 < nodes; ++j) (*f)[j] = d(rng);
  return z;
}

class Tracker {
 public:
  Tracker(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}
  void observe(double err) {
    if (!(err <= max_)) max_ = std::isnan(err) ? INFINITY : std::max(max_, err);
    ++count_;
  }
  void fail(const std::string& why) { error_ = why; }
  CheckResult result() const {
    CheckResult r;
    r.name = name_;
    r.max_error = max_;
    r.tolerance = tol_;
    r.passed = error_.empty() && max_ <= tol_ && count_ > 0;
    std::ostringstream os;
    os << count_ << " samples";
    if (!error_.empty()) os << "; " << error_;
    r.detail = os.str();
    return r;
  }

 private:
  std::string name_;
  double tol_;
  double max_ = 0.0;
  std::size_t count_ = 0;
  std::string error_;
};

template <typename F>
void guarded(Tracker& t, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    t.fail(e.what());
  }
}

double diff(const State& a, const State& b) { return max_abs_difference(a.values(), b.values()); }

}  // namespace

std::vector<CheckResult> run_property_suites(const VerifyOptions& options) {
  Rng rng(options.seed);
  std::vector<CheckResult> out;

  const kgs::Grid1D grid32(-10.0, 10.0, 32);
  const kgs::Grid1D grid16(-10.0, 10.0, 16);
  const std::size_t kgs_samples = options.samples;

  std::vector<Case> models;
  models.push_back({"henon-heiles", henon_heiles::hh_system(), henon_heiles::hh_grouping(), sample_hh,
                    options.samples});
  models.push_back({"kgs", kgs::kgs_system(grid32), kgs::kgs_grouping(grid32),
                    [&](Rng& r) { return sample_kgs_fields(r, grid32.nodes(), 0.5).to_state(); },
                    kgs_samples, grid32.nodes()});

  const numerics::NonlinearSolveConfig solver{};

  // collapse: a single group reduces every partitioned variant to AVF
  for (const auto& m : models) {
    Tracker t("collapse-to-avf/" + m.label, 1e-12);
    const auto one = Grouping::single(m.sys.dimension());
    const StepperConfig cfg{m.label == "kgs" ? 0.05 : 0.1, solver};
    guarded(t, [&] {
      for (std::size_t s = 0; s < m.samples; ++s) {
        const State z = m.sample(rng);
        const State ref = step_avf(m.sys, cfg, z).state;
        for (Method meth : {Method::pavf, Method::pavf_adjoint, Method::pavf_p})
          t.observe(diff(step(meth, m.sys, one, cfg, z).state, ref));
      }
    });
    out.push_back(t.result());
  }

  // singleton groups reproduce the Itoh-Abe discrete gradient
  {
    std::vector<Case> ia;
    ia.push_back({"henon-heiles", henon_heiles::hh_system(), Grouping::singletons(4), sample_hh,
                  options.samples});
    ia.push_back({"kgs", kgs::kgs_system(grid16), Grouping::singletons(4 * grid16.nodes()),
                  [&](Rng& r) { return sample_kgs_fields(r, grid16.nodes(), 0.2).to_state(); },
                  kgs_samples, grid16.nodes()});
    std::uniform_real_distribution<double> mag(0.05, 0.2);
    std::bernoulli_distribution sign;
    for (const auto& m : ia) {
      Tracker t("itoh-abe/" + m.label, 1e-12);
      guarded(t, [&] {
        for (std::size_t s = 0; s < m.samples; ++s) {
          const State z0 = m.sample(rng);
          // the divided differences lose eps*|H|/|dz_i|, so keep every increment away from zero
          std::vector<double> w(z0.values().begin(), z0.values().end());
          for (std::size_t i = 0; i < w.size(); ++i) {
            const std::size_t j = m.boundary_period ? i % m.boundary_period : 1;
            if (j == 0 || j + 1 == m.boundary_period) continue;  // pinned
            w[i] += (sign(rng) ? mag(rng) : -mag(rng));
          }
          const State z1(std::move(w));
          std::vector<double> g(m.sys.dimension());
          partitioned_averaged_gradient(m.sys, m.grouping, z0.values(), z1.values(), PathOrder::forward, g);
          const auto ref = itoh_abe_discrete_gradient(m.sys, z0, z1);
          double scale = std::max(1.0, max_abs(ref));
          t.observe(max_abs_difference(g, ref) / scale);
        }
      });
      out.push_back(t.result());
    }
  }

  // adjoint pairing: pavf(-tau) undoes pavf-adjoint(tau); symmetric schemes undo themselves
  for (const auto& m : models) {
    Tracker pairing("adjoint-pairing/" + m.label, 1e-10);
    Tracker symmetry("symmetry/" + m.label, 1e-10);
    const double tau = m.label == "kgs" ? 0.05 : 0.1;
    const StepperConfig fwd{tau, solver};
    const StepperConfig back{-tau, solver};
    guarded(pairing, [&] {
      for (std::size_t s = 0; s < m.samples; ++s) {
        const State z = m.sample(rng);
        const State a = step_pavf_adjoint(m.sys, m.grouping, fwd, z).state;
        pairing.observe(diff(step_pavf(m.sys, m.grouping, back, a).state, z));
        const State b = step_pavf(m.sys, m.grouping, fwd, z).state;
        pairing.observe(diff(step_pavf_adjoint(m.sys, m.grouping, back, b).state, z));
      }
    });
    guarded(symmetry, [&] {
      for (std::size_t s = 0; s < m.samples; ++s) {
        const State z = m.sample(rng);
        for (Method meth : {Method::avf, Method::pavf_c, Method::pavf_p}) {
          const State a = step(meth, m.sys, m.grouping, fwd, z).state;
          symmetry.observe(diff(step(meth, m.sys, m.grouping, back, a).state, z));
        }
      }
    });
    out.push_back(pairing.result());
    out.push_back(symmetry.result());
  }

  // discrete chain rule: H(z1) - H(z0) = sum_k <gbar_k, dz_k>
  for (const auto& m : models) {
    Tracker t("discrete-chain-rule/" + m.label, 1e-12);
    guarded(t, [&] {
      std::vector<double> g(m.sys.dimension());
      for (std::size_t s = 0; s < m.samples; ++s) {
        const State z0 = m.sample(rng);
        const State z1 = m.sample(rng);
        std::vector<double> dz(z0.size());
        for (std::size_t i = 0; i < dz.size(); ++i) dz[i] = z1[i] - z0[i];
        const double dh = m.sys.hamiltonian(z1.values()) - m.sys.hamiltonian(z0.values());
        for (PathOrder order : {PathOrder::forward, PathOrder::adjoint}) {
          partitioned_averaged_gradient(m.sys, m.grouping, z0.values(), z1.values(), order, g);
          const double scale = std::max(1.0, std::abs(dh));
          t.observe(std::abs(dot(g, dz) - dh) / scale);
        }
        const auto ga = avf_averaged_gradient(m.sys, z0, z1);
        t.observe(std::abs(dot(ga, dz) - dh) / std::max(1.0, std::abs(dh)));
      }
    });
    out.push_back(t.result());
  }

  // hand-coded schemes agree with the generic integrators
  {
    Tracker t("hand-coded-vs-generic/henon-heiles", 1e-10);
    const auto sys = henon_heiles::hh_system();
    const auto grouping = henon_heiles::hh_grouping();
    guarded(t, [&] {
      for (double tau : {0.05, 0.2}) {
        const StepperConfig cfg{tau, solver};
        for (std::size_t s = 0; s < options.samples; ++s) {
          const State z = sample_hh(rng);
          for (Method meth : {Method::avf, Method::pavf, Method::pavf_adjoint, Method::pavf_c, Method::pavf_p}) {
            const auto hand = henon_heiles::step(meth, cfg, henon_heiles::HHState::from(z)).state;
            t.observe(diff(hand.to_state(), step(meth, sys, grouping, cfg, z).state));
          }
        }
      }
    });
    out.push_back(t.result());
  }
  {
    Tracker t("hand-coded-vs-generic/kgs", 1e-10);
    const auto sys = kgs::kgs_system(grid32);
    const auto grouping = kgs::kgs_grouping(grid32);
    const StepperConfig cfg{0.05, solver};
    guarded(t, [&] {
      for (std::size_t s = 0; s < kgs_samples; ++s) {
        const auto z = sample_kgs_fields(rng, grid32.nodes(), 0.5);
        const State zs = z.to_state();
        for (Method meth : {Method::avf, Method::pavf, Method::pavf_adjoint, Method::pavf_c, Method::pavf_p}) {
          const auto hand = kgs::step(meth, grid32, cfg, z).state;
          t.observe(diff(hand.to_state(), step(meth, sys, grouping, cfg, zs).state));
        }
      }
    });
    out.push_back(t.result());
  }

  // analytic gradient against central differences
  for (const auto& m : models) {
    Tracker t("gradient-consistency/" + m.label, 1e-6);
    guarded(t, [&] {
      constexpr double eps = 1e-6;
      const std::size_t n = m.sys.dimension();
      std::vector<double> g(n);
      for (std::size_t s = 0; s < m.samples; ++s) {
        const State z = m.sample(rng);
        m.sys.gradient(z.values(), g);
        std::vector<double> w(z.begin(), z.end());
        for (std::size_t i = 0; i < n; ++i) {
          if (const auto p = m.boundary_period; p > 0 && (i % p == 0 || i % p == p - 1)) continue;
          const double keep = w[i];
          w[i] = keep + eps;
          const double hp = m.sys.hamiltonian(w);
          w[i] = keep - eps;
          const double hm = m.sys.hamiltonian(w);
          w[i] = keep;
          const double fd = (hp - hm) / (2.0 * eps);
          t.observe(std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i])));
        }
      }
    });
    out.push_back(t.result());
  }

  return out;
}

}  // namespace pavf::harness
