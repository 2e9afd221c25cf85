#pragma once

#include <cstdint>
#include <span>

#include "nlexp/path_event.hpp"
#include "nlexp/rng.hpp"
#include "nlexp/sequence_model.hpp"

namespace nlexp::mc {

// Flattened coordinate/member access for the sampling kernels. Coordinate
// draws use counter-based substreams keyed (seed, k): changing the member
// selected at one coordinate never perturbs the uniforms consumed anywhere
// else (common random numbers).
class CoordView {
 public:
  CoordView(const SequenceModel& model, int n);

  int n() const { return n_; }
  std::uint32_t member_count(std::size_t k) const;               // k 1-based
  const Distribution& dist(std::size_t k, std::uint32_t m) const;
  bool all_singletons() const;

  double uniform(std::size_t k, std::uint64_t seed, std::uint64_t rep) const {
    return rng::unit(seed, k, rep);
  }
  double draw(std::size_t k, std::uint32_t m, std::uint64_t seed,
              std::uint64_t rep) const {
    return dist(k, m).quantile(uniform(k, seed, rep));
  }

 private:
  const SequenceModel* model_;
  int n_;
};

// Each kernel has a serial reference and an OpenMP variant. Both produce
// bitwise-identical results: per-repetition arithmetic is a fixed sequential
// recipe and cross-repetition reductions are integer counts, so the thread
// count never shows in the output.

// sums[r] = sum over coordinates of the selected members' draws for rep r.
void path_sums_serial(const CoordView& view,
                      std::span<const std::uint32_t> selection,
                      std::uint64_t seed, std::span<double> sums);
void path_sums_parallel(const CoordView& view,
                        std::span<const std::uint32_t> selection,
                        std::uint64_t seed, std::span<double> sums);

// Number of repetitions whose mean falls in the event window.
std::uint64_t count_hits(std::span<const double> sums, int n,
                         const EventWindow& window);

// counts[m] = hits if coordinate k switched its member to m, holding every
// other coordinate fixed (evaluated under common random numbers).
void swap_scan_serial(const CoordView& view,
                      std::span<const std::uint32_t> selection, std::size_t k,
                      std::uint64_t seed, std::span<const double> sums,
                      const EventWindow& window,
                      std::span<std::uint64_t> counts);
void swap_scan_parallel(const CoordView& view,
                        std::span<const std::uint32_t> selection,
                        std::size_t k, std::uint64_t seed,
                        std::span<const double> sums,
                        const EventWindow& window,
                        std::span<std::uint64_t> counts);

// sums[r] += draw(k, to) - draw(k, from).
void apply_swap_serial(const CoordView& view, std::size_t k,
                       std::uint32_t from, std::uint32_t to,
                       std::uint64_t seed, std::span<double> sums);
void apply_swap_parallel(const CoordView& view, std::size_t k,
                         std::uint32_t from, std::uint32_t to,
                         std::uint64_t seed, std::span<double> sums);

}  // namespace nlexp::mc
