#include "dfw/hodge.hpp"

#include <stdexcept>

namespace dfw {

namespace {

void accumulate(SplitCoeffs& acc, const SplitCoeffs& x) {
  if (acc.blocks.empty()) {
    acc = x;
    return;
  }
  for (auto& [key, b] : acc.blocks) {
    const SplitBlock& o = x.blocks.at(key);
    for (std::size_t i = 0; i < b.main.size(); ++i) b.main[i] += o.main[i];
    for (std::size_t i = 0; i < b.rest.size(); ++i) b.rest[i] += o.rest[i];
  }
}

}  // namespace

StaggeredField eval_divfree(const DivFreeCoeffs& d, std::size_t n) {
  const StaggeredField sites = StaggeredField::staggered(d.ndim(), n);
  return eval_at_grid(synthesize_vector(from_divfree(d)), d.layout, Space::Plain, sites);
}

StaggeredField eval_curlfree(const CurlFreeCoeffs& c, std::size_t n) {
  const StaggeredField sites = StaggeredField::staggered(c.ndim(), n);
  return eval_at_grid(synthesize_vector(from_curlfree_aniso2d(c)), c.layout, Space::Sharp, sites);
}

HodgeResult hodge_decompose(const StaggeredField& field, const HodgeConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!field.has_standard_stagger()) throw std::invalid_argument("field must use the standard staggered layout");
  const int nd = field.ndim;
  if (nd != 2 && nd != 3) throw std::invalid_argument("Hodge decomposition needs a 2D or 3D field");
  const Layout dl = div_layout(nd);

  HodgeResult res;
  res.ndim = nd;
  res.n = field.n;
  res.input_norm = norm_l2(field);
  res.residual = field;
  {
    const auto zero = interp_field(field.zeros_like(), dl, Space::Plain, Interp::Quasi);
    res.div = divfree_part(to_divfree(analyze_vector(zero, dl, PyramidMode::Anisotropic, cfg.levels)));
    if (nd == 2) {
      const auto zc = interp_field(field.zeros_like(), curl_layout(2), Space::Sharp, Interp::Quasi);
      res.curl = curlfree_part(to_curlfree_aniso2d(analyze_vector(zc, curl_layout(2), PyramidMode::Anisotropic, cfg.levels)));
    }
  }
  if (res.input_norm == 0.0) {
    res.converged = true;
    return res;
  }

  StaggeredField& r = res.residual;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const Interp mode = (cfg.interp == Interp::Fourier && it > 1) ? Interp::Quasi : cfg.interp;

    const DivFreeCoeffs d = divfree_part(
        to_divfree(analyze_vector(interp_field(r, dl, Space::Plain, mode), dl, PyramidMode::Anisotropic, cfg.levels)));
    const StaggeredField v_div = eval_divfree(d, field.n);
    accumulate(res.div, d);
    r -= v_div;

    double removed = norm_l2(v_div);
    if (nd == 2) {
      const Layout cl = curl_layout(2);
      const CurlFreeCoeffs c = curlfree_part(to_curlfree_aniso2d(
          analyze_vector(interp_field(r, cl, Space::Sharp, mode), cl, PyramidMode::Anisotropic, cfg.levels)));
      const StaggeredField v_curl = eval_curlfree(c, field.n);
      accumulate(res.curl, c);
      r -= v_curl;
    }

    res.iterations = it;
    const double rel = norm_l2(r) / res.input_norm;
    if (cfg.record_history) res.residual_history.push_back(rel);
    const bool done = nd == 2 ? rel < cfg.epsilon : removed / res.input_norm < cfg.epsilon;
    if (done) {
      res.converged = true;
      break;
    }
  }
  return res;
}

std::pair<StaggeredField, StaggeredField> reconstruct_parts(const HodgeResult& r) {
  StaggeredField u_div = eval_divfree(r.div, r.n);
  StaggeredField u_curl = r.ndim == 2 ? eval_curlfree(r.curl, r.n) : u_div.zeros_like();
  return {std::move(u_div), std::move(u_curl)};
}

NdArray hodge_pressure(const HodgeResult& r) {
  if (r.ndim != 2) throw std::invalid_argument("pressure reconstruction is available in 2D only");
  return reconstruct_pressure(r.curl);
}

}  // namespace dfw
