#include "thermoent/optimize.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>

namespace thermoent {

namespace {

struct Call {
  const Objective* f;
  std::vector<double> scratch;
};

double trampoline(const gsl_vector* v, void* params) {
  auto* call = static_cast<Call*>(params);
  for (std::size_t i = 0; i < call->scratch.size(); ++i) call->scratch[i] = gsl_vector_get(v, i);
  const double value = (*call->f)(call->scratch);
  return std::isfinite(value) ? value : std::numeric_limits<double>::max();
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

}  // namespace

SimplexResult minimize_simplex(const Objective& f, const std::vector<double>& x0, const SimplexOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("minimize_simplex: empty starting point");
  gsl_set_error_handler_off();

  Call call{&f, std::vector<double>(n)};
  gsl_multimin_function fn{&trampoline, n, &call};

  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
  std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, x0[i]);
  gsl_vector_set_all(step.get(), options.initial_step);

  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), step.get());

  SimplexResult result;
  int status = GSL_CONTINUE;
  while (status == GSL_CONTINUE && result.iterations < options.max_iterations) {
    ++result.iterations;
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), options.size_tolerance);
  }
  result.converged = status == GSL_SUCCESS;
  result.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.x[i] = gsl_vector_get(m->x, i);
  result.value = m->fval;
  return result;
}

std::vector<double> Box::clamp(const std::vector<double>& x) const {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::clamp(x[i], lower[i], upper[i]);
  return y;
}

void Box::validate() const {
  if (lower.empty() || lower.size() != upper.size()) throw std::invalid_argument("Box: bad dimensions");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) throw std::invalid_argument("Box: lower bound above upper bound");
  }
}

SimplexResult minimize_multistart(const Objective& f, const Box& box, const std::vector<std::vector<double>>& seeds,
                                  std::size_t random_starts, std::uint64_t seed, const SimplexOptions& options) {
  box.validate();
  const std::size_t n = box.dimension();
  const Objective boxed = [&](const std::vector<double>& x) {
    const std::vector<double> y = box.clamp(x);
    double outside = 0.0;
    for (std::size_t i = 0; i < n; ++i) outside += (x[i] - y[i]) * (x[i] - y[i]);
    return f(y) + 1e3 * outside;
  };

  std::vector<std::vector<double>> starts;
  for (const auto& s : seeds) {
    if (s.size() != n) throw std::invalid_argument("minimize_multistart: seed has wrong dimension");
    starts.push_back(box.clamp(s));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < random_starts; ++k) {
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uniform_real_distribution<double> u(box.lower[i], box.upper[i]);
      s[i] = u(rng);
    }
    starts.push_back(std::move(s));
  }
  if (starts.empty()) throw std::invalid_argument("minimize_multistart: no starting points");

  SimplexResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    SimplexResult r = minimize_simplex(boxed, s, options);
    r.x = box.clamp(r.x);
    r.value = f(r.x);
    if (!(r.value >= best.value)) best = std::move(r);
  }
  return best;
}

}  // namespace thermoent
