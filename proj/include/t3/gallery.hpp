#pragma once

#include "t3/tensor.hpp"

#include <cstdint>
#include <string>

namespace t3 {

/// Deterministic recipe for a gallery test tensor: a classic ill-conditioned
/// base matrix plus a rule turning it into frontal slices.
struct GallerySpec {
    enum class Family { Chow, Kahan, Cycol, Gearmat };
    enum class SliceRule { Replicate, SeededPerturb };

    Family family = Family::Chow;
    Index rows = 0;
    Index cols = 0;
    Index n = 1;

    double alpha = 1.0;   // chow
    double delta = 0.0;   // chow
    double theta = 1.2;   // kahan, in (0, pi/2)
    double pert = 25.0;   // kahan diagonal perturbation factor
    Index cycle_len = 0;  // cycol; 0 selects max(cols/4, 1)
    long gear_i = 0;      // gearmat; 0 selects +rows
    long gear_j = 0;      // gearmat; 0 selects -1

    SliceRule slice_rule = SliceRule::Replicate;
    std::uint64_t seed = 0;
    double perturb_magnitude = 0.0;

    std::string describe() const;

    static Family parse_family(const std::string& name);
    static std::string family_name(Family f);
};

/// Builds the base matrix for the family and assigns every frontal slice per
/// the slice rule. Generated tensors are deterministic functions of the full
/// spec including the seed. Throws std::invalid_argument on bad parameters
/// (non-square chow/gearmat, kahan theta outside (0, pi/2), ...).
Tensor3 generate(const GallerySpec& spec);

/// The family base matrix alone (one slice's worth).
RealMatrix gallery_base(const GallerySpec& spec);

} // namespace t3
