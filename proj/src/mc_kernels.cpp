#include "nlexp/mc_kernels.hpp"

#include <cstdint>
#include <vector>

namespace nlexp::mc {

CoordView::CoordView(const SequenceModel& model, int n) : model_(&model), n_(n) {
  if (n < 1) throw ValidationError("n", "must be >= 1");
  if (model.max_coords() < static_cast<std::size_t>(n))
    throw ValidationError("n", "model provides fewer coordinates than n");
  if (model.dependence() != Dependence::kProduct)
    throw ValidationError("dependence",
                          "path sampling requires product dependence");
}

std::uint32_t CoordView::member_count(std::size_t k) const {
  return static_cast<std::uint32_t>(model_->coord(k).size());
}

const Distribution& CoordView::dist(std::size_t k, std::uint32_t m) const {
  return model_->coord(k).member(m);
}

bool CoordView::all_singletons() const {
  if (model_->iid_rule()) return model_->coord(1).singleton();
  for (int k = 1; k <= n_; ++k) {
    if (member_count(k) > 1) return false;
  }
  return true;
}

namespace {

inline double rep_sum(const CoordView& view,
                      std::span<const std::uint32_t> selection,
                      std::uint64_t seed, std::uint64_t rep) {
  double sum = 0.0;
  const std::size_t n = selection.size();
  for (std::size_t k = 1; k <= n; ++k) {
    sum += view.draw(k, selection[k - 1], seed, rep);
  }
  return sum;
}

}  // namespace

void path_sums_serial(const CoordView& view,
                      std::span<const std::uint32_t> selection,
                      std::uint64_t seed, std::span<double> sums) {
  const std::int64_t reps = static_cast<std::int64_t>(sums.size());
  for (std::int64_t r = 0; r < reps; ++r) {
    sums[r] = rep_sum(view, selection, seed, r);
  }
}

void path_sums_parallel(const CoordView& view,
                        std::span<const std::uint32_t> selection,
                        std::uint64_t seed, std::span<double> sums) {
  const std::int64_t reps = static_cast<std::int64_t>(sums.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < reps; ++r) {
    sums[r] = rep_sum(view, selection, seed, r);
  }
}

std::uint64_t count_hits(std::span<const double> sums, int n,
                         const EventWindow& window) {
  const double inv_n = 1.0 / n;
  std::uint64_t hits = 0;
  for (double s : sums) {
    if (window.hit(s * inv_n)) ++hits;
  }
  return hits;
}

namespace {

inline void swap_scan_rep(const CoordView& view,
                          std::span<const std::uint32_t> selection,
                          std::size_t k, std::uint64_t seed, double sum,
                          std::uint64_t rep, double inv_n,
                          const EventWindow& window,
                          std::span<std::uint64_t> counts) {
  const double u = view.uniform(k, seed, rep);
  const double x_cur = view.dist(k, selection[k - 1]).quantile(u);
  const double base = sum - x_cur;
  for (std::uint32_t m = 0; m < counts.size(); ++m) {
    const double x = view.dist(k, m).quantile(u);
    if (window.hit((base + x) * inv_n)) ++counts[m];
  }
}

}  // namespace

void swap_scan_serial(const CoordView& view,
                      std::span<const std::uint32_t> selection, std::size_t k,
                      std::uint64_t seed, std::span<const double> sums,
                      const EventWindow& window,
                      std::span<std::uint64_t> counts) {
  for (std::uint64_t& c : counts) c = 0;
  const double inv_n = 1.0 / view.n();
  const std::int64_t reps = static_cast<std::int64_t>(sums.size());
  for (std::int64_t r = 0; r < reps; ++r) {
    swap_scan_rep(view, selection, k, seed, sums[r], r, inv_n, window, counts);
  }
}

void swap_scan_parallel(const CoordView& view,
                        std::span<const std::uint32_t> selection,
                        std::size_t k, std::uint64_t seed,
                        std::span<const double> sums,
                        const EventWindow& window,
                        std::span<std::uint64_t> counts) {
  for (std::uint64_t& c : counts) c = 0;
  const double inv_n = 1.0 / view.n();
  const std::int64_t reps = static_cast<std::int64_t>(sums.size());
  const std::size_t m_count = counts.size();
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(m_count, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t r = 0; r < reps; ++r) {
      swap_scan_rep(view, selection, k, seed, sums[r], r, inv_n, window,
                    std::span<std::uint64_t>(local));
    }
#pragma omp critical
    {
      for (std::size_t m = 0; m < m_count; ++m) counts[m] += local[m];
    }
  }
}

void apply_swap_serial(const CoordView& view, std::size_t k,
                       std::uint32_t from, std::uint32_t to,
                       std::uint64_t seed, std::span<double> sums) {
  const std::int64_t reps = static_cast<std::int64_t>(sums.size());
  for (std::int64_t r = 0; r < reps; ++r) {
    const double u = view.uniform(k, seed, r);
    sums[r] += view.dist(k, to).quantile(u) - view.dist(k, from).quantile(u);
  }
}

void apply_swap_parallel(const CoordView& view, std::size_t k,
                         std::uint32_t from, std::uint32_t to,
                         std::uint64_t seed, std::span<double> sums) {
  const std::int64_t reps = static_cast<std::int64_t>(sums.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < reps; ++r) {
    const double u = view.uniform(k, seed, r);
    sums[r] += view.dist(k, to).quantile(u) - view.dist(k, from).quantile(u);
  }
}

}  // namespace nlexp::mc
