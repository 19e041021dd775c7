#include "dfw/fwt.hpp"

#include <algorithm>
#include <stdexcept>

#include "dfw/parallel.hpp"

namespace dfw {

int BlockKey::wavelet_count(int ndim) const {
  int c = 0;
  for (int a = 0; a < ndim; ++a) c += axes[static_cast<std::size_t>(a)].wavelet ? 1 : 0;
  return c;
}

std::size_t Pyramid::coefficient_count() const {
  std::size_t c = 0;
  for (const auto& [k, b] : blocks) c += b.size();
  return c;
}

int default_levels(std::size_t n) {
  const int j = log2_exact(n);
  return std::max(0, j - 2);
}

Extents block_extents(const BlockKey& key, int ndim) {
  Extents e;
  e.ndim = ndim;
  for (int a = 0; a < ndim; ++a) e.n[static_cast<std::size_t>(a)] = std::size_t{1} << key.axes[static_cast<std::size_t>(a)].level;
  return e;
}

std::array<std::size_t, 3> block_origin(const BlockKey& key, int ndim) {
  std::array<std::size_t, 3> o{0, 0, 0};
  for (int a = 0; a < ndim; ++a) {
    const auto& s = key.axes[static_cast<std::size_t>(a)];
    if (s.wavelet) o[static_cast<std::size_t>(a)] = std::size_t{1} << s.level;
  }
  return o;
}

std::vector<BlockKey> block_keys(PyramidMode mode, const Extents& ext, const std::array<int, 3>& jmin) {
  const int nd = ext.ndim;
  std::vector<BlockKey> keys;
  if (mode == PyramidMode::Anisotropic) {
    std::array<std::vector<AxisScale>, 3> per_axis;
    for (int a = 0; a < 3; ++a) {
      auto& v = per_axis[static_cast<std::size_t>(a)];
      if (a >= nd) {
        v.push_back({false, 0});
        continue;
      }
      const int J = log2_exact(ext[a]);
      v.push_back({false, jmin[static_cast<std::size_t>(a)]});
      for (int j = jmin[static_cast<std::size_t>(a)]; j < J; ++j) v.push_back({true, j});
    }
    for (const auto& s0 : per_axis[0])
      for (const auto& s1 : per_axis[1])
        for (const auto& s2 : per_axis[2]) keys.push_back(BlockKey{{s0, s1, s2}});
  } else {
    const int J = log2_exact(ext[0]);
    BlockKey coarse;
    for (int a = 0; a < nd; ++a) coarse.axes[static_cast<std::size_t>(a)] = {false, jmin[0]};
    keys.push_back(coarse);
    for (int j = jmin[0]; j < J; ++j)
      for (unsigned eps = 1; eps < (1u << nd); ++eps) {
        BlockKey k;
        for (int a = 0; a < nd; ++a) k.axes[static_cast<std::size_t>(a)] = {((eps >> (nd - 1 - a)) & 1u) != 0, j};
        keys.push_back(k);
      }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

Pyramid zeros_like(const Pyramid& p) {
  Pyramid z = p;
  for (auto& [k, b] : z.blocks) b.fill(0.0);
  return z;
}

Pyramid from_mallat(const NdArray& mallat, PyramidMode mode, const Degrees& degrees, const std::array<int, 3>& jmin) {
  Pyramid p;
  p.mode = mode;
  p.ext = mallat.extents();
  p.degrees = degrees;
  p.jmin = jmin;
  for (const auto& key : block_keys(mode, p.ext, jmin))
    p.blocks.emplace(key, extract(mallat, block_origin(key, p.ndim()), block_extents(key, p.ndim())));
  return p;
}

NdArray to_mallat(const Pyramid& p) {
  NdArray out(p.ext);
  for (const auto& [key, b] : p.blocks) {
    if (!(b.extents() == block_extents(key, p.ndim()))) throw std::invalid_argument("pyramid block size mismatch");
    insert(out, block_origin(key, p.ndim()), b);
  }
  return out;
}

namespace {

struct BankTaps {
  std::vector<double> h_star, g_star, h, g;
  kernels::Filter lo_a, hi_a, lo_s, hi_s;
};

const BankTaps& bank_taps(SplineDegree d) {
  static const auto build = [](SplineDegree deg) {
    const FilterBank fb = filter_bank(deg);
    BankTaps t;
    t.h_star = fb.scaled(fb.h_star).c;
    t.g_star = fb.scaled(fb.g_star).c;
    t.h = fb.scaled(fb.h).c;
    t.g = fb.scaled(fb.g).c;
    t.lo_a = {t.h_star.data(), fb.h_star.start, fb.h_star.size()};
    t.hi_a = {t.g_star.data(), fb.g_star.start, fb.g_star.size()};
    t.lo_s = {t.h.data(), fb.h.start, fb.h.size()};
    t.hi_s = {t.g.data(), fb.g.start, fb.g.size()};
    return t;
  };
  static const BankTaps deg1 = build(SplineDegree::Deg1);
  static const BankTaps deg2 = build(SplineDegree::Deg2);
  return d == SplineDegree::Deg1 ? deg1 : deg2;
}

constexpr std::size_t kGatherLines = 8;

void axis_pass(NdArray& arr, int axis, const std::array<std::size_t, 3>& box, SplineDegree degree, bool fwd,
               const kernels::KernelSet* ks) {
  const kernels::KernelSet& set = ks ? *ks : kernels::active();
  const auto& taps = bank_taps(degree);
  const kernels::Filter lo = fwd ? taps.lo_a : taps.lo_s;
  const kernels::Filter hi = fwd ? taps.hi_a : taps.hi_s;
  const auto run = fwd ? set.analyze : set.synthesize;

  const int nd = arr.ndim();
  const int lane_axis = nd - 1;
  const std::size_t len = box[static_cast<std::size_t>(axis)];
  if (len < 2 || len % 2) throw std::invalid_argument("axis pass needs an even length");
  const std::size_t row_stride = arr.stride(axis);

  std::vector<int> outer;
  for (int a = 0; a < nd; ++a)
    if (a != axis && (axis == lane_axis || a != lane_axis)) outer.push_back(a);
  std::size_t outer_count = 1;
  for (int a : outer) outer_count *= box[static_cast<std::size_t>(a)];
  const auto outer_base = [&](std::size_t o) {
    std::size_t base = 0;
    for (auto it = outer.rbegin(); it != outer.rend(); ++it) {
      const std::size_t b = box[static_cast<std::size_t>(*it)];
      base += (o % b) * arr.stride(*it);
      o /= b;
    }
    return base;
  };
  double* data = arr.data();

  if (axis != lane_axis) {
    const std::size_t width = box[static_cast<std::size_t>(lane_axis)];
    parallel_for(outer_count, [&](std::size_t o) {
      std::vector<double> tmp(len * width);
      double* base = data + outer_base(o);
      run(base, row_stride, len, width, lo, hi, tmp.data(), width);
      for (std::size_t r = 0; r < len; ++r) std::copy_n(tmp.data() + r * width, width, base + r * row_stride);
    });
    return;
  }

  // Lines are contiguous along the lane axis: transpose groups of them into a panel.
  const std::size_t groups = (outer_count + kGatherLines - 1) / kGatherLines;
  parallel_for(groups, [&](std::size_t gi) {
    const std::size_t first = gi * kGatherLines;
    const std::size_t width = std::min(kGatherLines, outer_count - first);
    std::vector<double> in(len * width), out(len * width);
    std::vector<std::size_t> bases(width);
    for (std::size_t l = 0; l < width; ++l) {
      bases[l] = outer_base(first + l);
      for (std::size_t r = 0; r < len; ++r) in[r * width + l] = data[bases[l] + r];
    }
    run(in.data(), width, len, width, lo, hi, out.data(), width);
    for (std::size_t l = 0; l < width; ++l)
      for (std::size_t r = 0; r < len; ++r) data[bases[l] + r] = out[r * width + l];
  });
}

std::array<int, 3> resolve_levels(const Extents& ext, std::array<int, 3> levels) {
  for (int a = 0; a < ext.ndim; ++a) {
    auto& l = levels[static_cast<std::size_t>(a)];
    const int J = log2_exact(ext[a]);
    if (l < 0) l = default_levels(ext[a]);
    if (l > 0 && (l > J || (ext[a] >> l) < 4)) throw std::invalid_argument("coarsest block would be shorter than 4");
  }
  for (int a = ext.ndim; a < 3; ++a) levels[static_cast<std::size_t>(a)] = 0;
  return levels;
}

std::array<std::size_t, 3> full_box(const Extents& ext) { return ext.n; }

}  // namespace

void analyze_axis(NdArray& a, int axis, const std::array<std::size_t, 3>& box, SplineDegree degree,
                  const kernels::KernelSet* ks) {
  axis_pass(a, axis, box, degree, true, ks);
}

void synthesize_axis(NdArray& a, int axis, const std::array<std::size_t, 3>& box, SplineDegree degree,
                     const kernels::KernelSet* ks) {
  axis_pass(a, axis, box, degree, false, ks);
}

Pyramid anisotropic_forward(const NdArray& field, const Degrees& degrees, std::array<int, 3> levels) {
  const Extents& ext = field.extents();
  levels = resolve_levels(ext, levels);
  NdArray work = field;
  std::array<int, 3> jmin{0, 0, 0};
  for (int a = 0; a < ext.ndim; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    auto box = full_box(ext);
    for (int l = 0; l < levels[ua]; ++l) {
      box[ua] = ext[a] >> l;
      analyze_axis(work, a, box, degrees[ua]);
    }
    jmin[ua] = log2_exact(ext[a]) - levels[ua];
  }
  return from_mallat(work, PyramidMode::Anisotropic, degrees, jmin);
}

NdArray anisotropic_inverse(const Pyramid& p) {
  if (p.mode != PyramidMode::Anisotropic) throw std::invalid_argument("expected an anisotropic pyramid");
  NdArray work = to_mallat(p);
  for (int a = p.ndim() - 1; a >= 0; --a) {
    const auto ua = static_cast<std::size_t>(a);
    auto box = full_box(p.ext);
    const int J = log2_exact(p.ext[a]);
    for (int j = p.jmin[ua]; j < J; ++j) {
      box[ua] = std::size_t{2} << j;
      synthesize_axis(work, a, box, p.degrees[ua]);
    }
  }
  return work;
}

Pyramid isotropic_forward(const NdArray& field, const Degrees& degrees, int levels) {
  const Extents& ext = field.extents();
  for (int a = 1; a < ext.ndim; ++a)
    if (ext[a] != ext[0]) throw std::invalid_argument("isotropic transform needs equal axis lengths");
  const int J = log2_exact(ext[0]);
  if (levels < 0) levels = default_levels(ext[0]);
  if (levels > 0 && (levels > J || (ext[0] >> levels) < 4))
    throw std::invalid_argument("coarsest block would be shorter than 4");
  NdArray work = field;
  for (int l = 0; l < levels; ++l) {
    std::array<std::size_t, 3> box{1, 1, 1};
    for (int a = 0; a < ext.ndim; ++a) box[static_cast<std::size_t>(a)] = ext[0] >> l;
    for (int a = 0; a < ext.ndim; ++a) analyze_axis(work, a, box, degrees[static_cast<std::size_t>(a)]);
  }
  std::array<int, 3> jmin{J - levels, J - levels, J - levels};
  return from_mallat(work, PyramidMode::Isotropic, degrees, jmin);
}

NdArray isotropic_inverse(const Pyramid& p) {
  if (p.mode != PyramidMode::Isotropic) throw std::invalid_argument("expected an isotropic pyramid");
  NdArray work = to_mallat(p);
  const int J = log2_exact(p.ext[0]);
  for (int j = p.jmin[0]; j < J; ++j) {
    std::array<std::size_t, 3> box{1, 1, 1};
    for (int a = 0; a < p.ndim(); ++a) box[static_cast<std::size_t>(a)] = std::size_t{2} << j;
    for (int a = p.ndim() - 1; a >= 0; --a) synthesize_axis(work, a, box, p.degrees[static_cast<std::size_t>(a)]);
  }
  return work;
}

Pyramid forward(const NdArray& field, PyramidMode mode, const Degrees& degrees, int levels) {
  if (mode == PyramidMode::Isotropic) return isotropic_forward(field, degrees, levels);
  return anisotropic_forward(field, degrees, {levels, levels, levels});
}

NdArray inverse(const Pyramid& p) {
  return p.mode == PyramidMode::Isotropic ? isotropic_inverse(p) : anisotropic_inverse(p);
}

Pyramid dwt_periodic(const std::vector<double>& signal, SplineDegree degree, int levels) {
  NdArray a(Extents{signal.size()});
  std::copy(signal.begin(), signal.end(), a.data());
  return anisotropic_forward(a, {degree, SplineDegree::Deg1, SplineDegree::Deg1}, {levels, 0, 0});
}

std::vector<double> idwt_periodic(const Pyramid& p) {
  if (p.ndim() != 1) throw std::invalid_argument("idwt_periodic expects a 1D pyramid");
  const NdArray a = anisotropic_inverse(p);
  return {a.data(), a.data() + a.size()};
}

}  // namespace dfw
