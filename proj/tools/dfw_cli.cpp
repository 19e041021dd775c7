// dfw: generate fields, analyze them in divergence-free wavelet bases,
// compute compression curves and run the wavelet Hodge decomposition.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "dfw/analysis.hpp"
#include "dfw/hodge.hpp"
#include "dfw/io.hpp"
#include "dfw/oracle.hpp"

namespace {

using namespace dfw;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNoConvergence = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, Interp> kInterp{{"quasi", Interp::Quasi}, {"fourier", Interp::Fourier}, {"exact", Interp::Exact}};

struct Basis {
  PyramidMode mode;
  int ndim;
};
const std::map<std::string, Basis> kBasis{{"iso2d", {PyramidMode::Isotropic, 2}},
                                          {"aniso2d", {PyramidMode::Anisotropic, 2}},
                                          {"iso3d", {PyramidMode::Isotropic, 3}},
                                          {"aniso3d", {PyramidMode::Anisotropic, 3}}};

StaggeredField load_staggered(const std::string& path) {
  StaggeredField f = io::to_field(io::read_field(path));
  if (f.ndim != 2 && f.ndim != 3) throw UsageError("expected a 2D or 3D field");
  if (!f.has_standard_stagger()) throw UsageError("expected a staggered vector field (component i offset by 1/2 along axis i)");
  if (!is_power_of_two(f.n) || f.n < 8) throw UsageError("grid size must be a power of two, at least 8");
  return f;
}

Basis pick_basis(const std::string& name, int ndim) {
  const Basis b = name.empty() ? Basis{PyramidMode::Anisotropic, ndim} : kBasis.at(name);
  if (b.ndim != ndim) throw UsageError("basis " + name + " does not match a " + std::to_string(ndim) + "D field");
  return b;
}

DivFreeCoeffs analyze(const StaggeredField& f, const Basis& b, Interp interp) {
  const Layout layout = div_layout(f.ndim);
  return to_divfree(analyze_vector(interp_field(f, layout, Space::Plain, interp), layout, b.mode));
}

// Normalized magnitudes of the divergence-free coefficients, each block at its
// place in the coefficient array.
NdArray magnitude_mosaic(const DivFreeCoeffs& d) {
  const int nd = d.ndim();
  NdArray out(d.ext);
  for (const auto& [key, b] : d.blocks) {
    std::vector<double> w;
    for (std::size_t m = 0; m < b.main.size(); ++m) w.push_back(basis_norm(d, key, m));
    NdArray mag(block_extents(key, nd));
    for (std::size_t i = 0; i < mag.size(); ++i) {
      double s = 0.0;
      for (std::size_t m = 0; m < b.main.size(); ++m) s += std::pow(w[m] * b.main[m][i], 2);
      mag[i] = std::sqrt(s);
    }
    insert(out, block_origin(key, nd), mag);
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  std::fputs(text.c_str(), stdout);
  if (!path.empty()) io::write_atomic(path, text);
}

std::size_t check_size(std::size_t n) {
  if (!is_power_of_two(n) || n < 8) throw UsageError("--n must be a power of two, at least 8");
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divergence-free wavelet analysis and Hodge decomposition of periodic vector fields"};
  app.require_subcommand(1);

  // gen
  std::string gen_type, gen_out;
  std::size_t gen_n = 0;
  int gen_dim = 2;
  std::uint64_t gen_seed = 0;
  double gen_exponent = 5.0 / 3.0;
  auto* gen = app.add_subcommand("gen", "Write a synthetic staggered field");
  gen->add_option("--type", gen_type, "Field kind")
      ->required()
      ->check(CLI::IsMember({"divfree-random", "compressible", "vortices", "gradient", "nonlinear"}));
  gen->add_option("--n", gen_n, "Grid points per axis (power of two)")->required();
  gen->add_option("--dim", gen_dim, "2 or 3")->check(CLI::IsMember({2, 3}));
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--exponent", gen_exponent, "Energy spectrum exponent of the random fields");
  gen->add_option("-o,--out", gen_out, "Output field file")->required();

  // analyze
  std::string an_in, an_basis, an_interp = "fourier", an_out, an_summary;
  auto* an = app.add_subcommand("analyze", "Divergence-free wavelet analysis of a field");
  an->add_option("input", an_in, "Field file")->required();
  an->add_option("--basis", an_basis, "Wavelet basis")->check(CLI::IsMember({"iso2d", "aniso2d", "iso3d", "aniso3d"}));
  an->add_option("--interp", an_interp, "Sample-to-coefficient rule")->check(CLI::IsMember({"quasi", "fourier", "exact"}));
  an->add_option("-o,--out", an_out, "Coefficient magnitude mosaic (field file)");
  an->add_option("--summary", an_summary, "Also write the summary to this file");

  // compress
  std::string co_in, co_basis, co_interp = "fourier", co_out;
  std::vector<std::size_t> co_points;
  std::size_t co_num = 30;
  std::vector<double> co_region{0.2, 0.8};
  auto* co = app.add_subcommand("compress", "Best-N-term compression curve of the divergence-free part");
  co->add_option("input", co_in, "Field file")->required();
  co->add_option("--basis", co_basis, "Wavelet basis")->check(CLI::IsMember({"iso2d", "aniso2d", "iso3d", "aniso3d"}));
  co->add_option("--interp", co_interp, "Sample-to-coefficient rule")->check(CLI::IsMember({"quasi", "fourier", "exact"}));
  co->add_option("--points", co_points, "Explicit coefficient counts")->delimiter(',');
  co->add_option("--num-points", co_num, "Number of log-spaced counts when --points is absent");
  co->add_option("--fit-region", co_region, "Fraction range of curve points used for the slope fit")
      ->delimiter(',')
      ->expected(2);
  co->add_option("-o,--out", co_out, "Output CSV (N,rel_l2_error)")->required();

  // hodge
  std::string ho_in, ho_interp = "quasi", ho_div, ho_curl, ho_pressure, ho_history;
  double ho_eps = 1e-8;
  int ho_max_iter = 500;
  auto* ho = app.add_subcommand("hodge", "Iterative wavelet Hodge decomposition");
  ho->add_option("input", ho_in, "Field file")->required();
  ho->add_option("--eps", ho_eps, "Relative residual threshold");
  ho->add_option("--max-iter", ho_max_iter, "Iteration cap");
  ho->add_option("--interp", ho_interp, "First-step rule; fourier falls back to quasi afterwards")
      ->check(CLI::IsMember({"quasi", "fourier", "exact"}));
  ho->add_option("--out-div", ho_div, "Divergence-free part (field file)");
  ho->add_option("--out-curl", ho_curl, "Gradient part (field file, 2D only)");
  ho->add_option("--pressure", ho_pressure, "Pressure at the grid points (field file, 2D only)");
  ho->add_option("--history", ho_history, "Residual history CSV (iter,residual)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      const std::size_t n = check_size(gen_n);
      StaggeredField f;
      if (gen_type == "divfree-random") {
        f = gen_divfree_random(gen_dim, n, gen_exponent, gen_seed);
      } else if (gen_type == "compressible") {
        f = gen_compressible_random(gen_dim, n, gen_exponent, gen_seed);
      } else if (gen_type == "vortices") {
        if (gen_dim != 2) throw UsageError("vortices are 2D only");
        f = gen_vortices(n, default_vortices());
      } else if (gen_type == "gradient") {
        f = gen_gradient(gen_dim, random_potential(gen_dim, n, gen_exponent, gen_seed)).grad;
      } else {
        f = sample_staggered(nonlinear_term(gen_random_spectral(gen_dim, n, gen_exponent, gen_seed, true)));
      }
      io::write_field(gen_out, io::from_field(f));
      return kOk;
    }

    if (*an) {
      const StaggeredField f = load_staggered(an_in);
      const Basis b = pick_basis(an_basis, f.ndim);
      const DivFreeCoeffs d = analyze(f, b, kInterp.at(an_interp));
      if (!an_out.empty()) io::write_field(an_out, io::from_scalar(magnitude_mosaic(d)));
      std::ostringstream s;
      s.precision(6);
      s << std::scientific;
      s << "grid " << f.n << "^" << f.ndim << "\n";
      s << "basis " << (b.mode == PyramidMode::Isotropic ? "iso" : "aniso") << f.ndim << "d\n";
      s << "interp " << an_interp << "\n";
      s << "blocks " << d.blocks.size() << "\n";
      s << "divfree_coefficients " << d.main_count() << "\n";
      s << "detail_coefficients " << detail_count(d) << "\n";
      s << "complement_rel_norm " << complement_ratio(d) << "\n";
      emit(s.str(), an_summary);
      return kOk;
    }

    if (*co) {
      if (co_region.size() != 2 || co_region[0] < 0.0 || co_region[1] > 1.0 || co_region[0] >= co_region[1])
        throw UsageError("--fit-region needs 0 <= a < b <= 1");
      const StaggeredField f = load_staggered(co_in);
      const DivFreeCoeffs d = divfree_part(analyze(f, pick_basis(co_basis, f.ndim), kInterp.at(co_interp)));
      const std::size_t total = detail_count(d);
      std::vector<std::size_t> counts = co_points.empty() ? log_spaced_counts(total, co_num) : co_points;
      for (std::size_t c : counts)
        if (c > total) throw UsageError("--points entry " + std::to_string(c) + " exceeds " + std::to_string(total));
      CompressionCurve curve = compression_curve(d, counts);
      double slope = 0.0;
      try {
        slope = fit_slope(curve, {co_region[0], co_region[1]});
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("fit region: ") + e.what());
      }
      io::Table t{{"N", "rel_l2_error"}, {}};
      for (const auto& p : curve.points) t.rows.push_back({static_cast<double>(p.n), p.err});
      io::write_csv(co_out, t);
      std::printf("total_coefficients %zu\nslope %.6f\n", total, slope);
      return kOk;
    }

    if (*ho) {
      if (!(ho_eps > 0.0)) throw UsageError("--eps must be positive");
      if (ho_max_iter < 1) throw UsageError("--max-iter must be at least 1");
      const StaggeredField f = load_staggered(ho_in);
      if (f.ndim == 3 && !ho_pressure.empty()) throw UsageError("--pressure is available for 2D fields only");
      if (f.ndim == 3 && !ho_curl.empty()) throw UsageError("--out-curl is available for 2D fields only");
      HodgeConfig cfg;
      cfg.epsilon = ho_eps;
      cfg.max_iter = ho_max_iter;
      cfg.interp = kInterp.at(ho_interp);
      const HodgeResult r = hodge_decompose(f, cfg);
      const auto [u_div, u_curl] = reconstruct_parts(r);
      if (!ho_div.empty()) io::write_field(ho_div, io::from_field(u_div));
      if (!ho_curl.empty()) io::write_field(ho_curl, io::from_field(u_curl));
      if (!ho_pressure.empty()) io::write_field(ho_pressure, io::from_scalar(hodge_pressure(r)));
      if (!ho_history.empty()) {
        io::Table t{{"iter", "residual"}, {}};
        for (std::size_t i = 0; i < r.residual_history.size(); ++i)
          t.rows.push_back({static_cast<double>(i + 1), r.residual_history[i]});
        io::write_csv(ho_history, t);
      }
      const double in = r.input_norm > 0.0 ? r.input_norm : 1.0;
      std::printf("iterations %d\nconverged %d\nresidual %.6e\ndiv_ratio %.6e\ncurl_ratio %.6e\n", r.iterations,
                  r.converged ? 1 : 0, r.residual_history.empty() ? 0.0 : r.residual_history.back(),
                  norm_l2(u_div) / in, norm_l2(u_curl) / in);
      if (!r.converged) {
        std::fprintf(stderr, "dfw: no convergence within %d iterations\n", ho_max_iter);
        return kNoConvergence;
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "dfw: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "dfw: %s\n", e.what());
    return kUsage;
  }
  return kOk;
}
