#include "projdunkl/kernels.hpp"

#include "projdunkl/intertwine.hpp"
#include "projdunkl/kummer.hpp"
#include "projdunkl/opengine.hpp"

#include <exception>
#include <map>

namespace projdunkl {

void for_each_index(std::size_t n, Execution exec, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

using Table = std::map<Exponent, MPoly, GrlexGreater>;

// sum_e c_e table[e] for the terms of p.
MPoly combine(const MPoly& p, const Table& table, std::size_t dim) {
  MPoly out(dim);
  for (const auto& [e, c] : p.terms()) out += c * table.at(e);
  return out;
}

}  // namespace

SweepOutcome commutator_case(const CommutatorCase& c) {
  const std::size_t N = c.xi.dim();
  const auto monos = monomials_up_to_degree(N, c.max_degree);
  Table tx, te;
  for (const auto& e : monos) {
    const MPoly m = MPoly::monomial(N, e);
    tx.emplace(e, apply_T_raw(m, c.xi, c.roots, c.kappas_xi));
    te.emplace(e, apply_T_raw(m, c.eta, c.roots, c.kappas_eta));
  }
  SweepOutcome out;
  for (const auto& e : monos) {
    ++out.monomials_checked;
    MPoly comm = combine(te.at(e), tx, N) - combine(tx.at(e), te, N);
    if (!comm.is_zero()) {
      out.monomial = MPoly::monomial(N, e);
      out.witness = std::move(comm);
      break;
    }
  }
  return out;
}

std::vector<SweepOutcome> commutator_sweep(const std::vector<CommutatorCase>& cases, Execution exec) {
  std::vector<SweepOutcome> out(cases.size());
  for_each_index(cases.size(), exec, [&](std::size_t i) { out[i] = commutator_case(cases[i]); });
  return out;
}

SweepOutcome intertwining_case(const IntertwiningCase& c, Execution exec) {
  const auto& s = c.subsystem;
  const std::size_t N = s.dim();
  const auto monos = monomials_up_to_degree(N, c.max_degree);
  std::vector<RationalVector> t_roots(s.roots().begin(), s.roots().end());
  std::vector<Rational> t_kappas(s.kappas().begin(), s.kappas().end());
  if (c.fault == Fault::DropProjection && !t_roots.empty()) {
    t_roots.erase(t_roots.begin());
    t_kappas.erase(t_kappas.begin());
  }
  std::vector<MPoly> chi(monos.size(), MPoly(N)), tee(monos.size(), MPoly(N));
  for_each_index(monos.size(), exec, [&](std::size_t i) {
    const MPoly m = MPoly::monomial(N, monos[i]);
    chi[i] = chi_tilde_raw(m, s.roots(), s.kappas());
    tee[i] = apply_T_raw(m, c.xi, t_roots, t_kappas);
  });
  Table chi_table, t_table;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    chi_table.emplace(monos[i], chi[i]);
    t_table.emplace(monos[i], tee[i]);
  }
  std::vector<std::optional<MPoly>> diff(monos.size());
  for_each_index(monos.size(), exec, [&](std::size_t i) {
    const MPoly m = MPoly::monomial(N, monos[i]);
    MPoly lhs = combine(chi[i], t_table, N);
    MPoly rhs = combine(directional_derivative(m, c.xi), chi_table, N);
    MPoly d = lhs - rhs;
    if (!d.is_zero()) diff[i] = std::move(d);
  });
  SweepOutcome out;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    ++out.monomials_checked;
    if (diff[i]) {
      out.monomial = MPoly::monomial(N, monos[i]);
      out.witness = std::move(diff[i]);
      break;
    }
  }
  return out;
}

std::vector<SweepOutcome> intertwining_sweep(const std::vector<IntertwiningCase>& cases, Execution exec) {
  std::vector<SweepOutcome> out;
  for (const auto& c : cases) out.push_back(intertwining_case(c, exec));
  return out;
}

std::vector<Complex> kummer_grid(const std::vector<double>& kappas, const std::vector<double>& lambdas,
                                 const std::vector<double>& xs, Execution exec) {
  const std::size_t nl = lambdas.size(), nx = xs.size();
  std::vector<Complex> out(kappas.size() * nl * nx);
  for_each_index(out.size(), exec, [&](std::size_t i) {
    const std::size_t k = i / (nl * nx), l = (i / nx) % nl, x = i % nx;
    out[i] = bold_M(kappas[k], Complex(0, lambdas[l] * xs[x]));
  });
  return out;
}

std::vector<Complex> transform_grid(const TransformRequest& req, Execution exec) {
  req.validate();
  std::vector<Complex> out(req.lambda_grid.size());
  for_each_index(out.size(), exec, [&](std::size_t i) { out[i] = kummer_transform_at(req, req.lambda_grid[i]); });
  return out;
}

}  // namespace projdunkl
