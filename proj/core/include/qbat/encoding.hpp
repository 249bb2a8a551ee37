#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "qbat/quaternion.hpp"
#include "qbat/rng.hpp"

namespace qbat {

/// How a genotype maps to the real-valued point the objective sees.
///
///   Real            identity map over D reals, clamped to the box
///   QuatNorm        one quaternion per coordinate, decoded through its norm
///   QuatShiftedNorm as QuatNorm but decoded as lower + norm, so the whole
///                   box is reachable (a plain norm only reaches [0, upper])
enum class EncodingMode { Real, QuatNorm, QuatShiftedNorm };

std::string_view to_string(EncodingMode mode);

/// Parses "real", "quat-norm" or "quat-shifted-norm"; anything else throws
/// std::invalid_argument naming the offending value.
EncodingMode encoding_from_string(std::string_view text);

/// Per-coordinate search box. lower[j] < upper[j] for every coordinate.
struct BoundsBox {
    std::vector<double> lower;
    std::vector<double> upper;

    BoundsBox() = default;
    BoundsBox(std::vector<double> lo, std::vector<double> hi);

    /// Box with the same [lo, hi] interval in every coordinate.
    static BoundsBox uniform(std::size_t dim, double lo, double hi);

    std::size_t dim() const { return lower.size(); }
};

/// A candidate solution in representation space: either D reals or D
/// quaternions, depending on the encoding the run uses.
class Genotype {
public:
    explicit Genotype(std::vector<double> reals) : data_(std::move(reals)) {}
    explicit Genotype(std::vector<Quaternion> quats) : data_(std::move(quats)) {}

    bool is_real() const { return std::holds_alternative<std::vector<double>>(data_); }

    std::size_t dim() const {
        return is_real() ? reals().size() : quaternions().size();
    }

    const std::vector<double>& reals() const { return std::get<std::vector<double>>(data_); }
    const std::vector<Quaternion>& quaternions() const {
        return std::get<std::vector<Quaternion>>(data_);
    }

private:
    std::variant<std::vector<double>, std::vector<Quaternion>> data_;
};

// Per-coordinate pieces of the genotype<->phenotype maps. The optimizers go
// through these directly so there is a single definition of each map.

inline double decode_real(double g, double lo, double hi) {
    return std::clamp(g, lo, hi);
}

inline double decode_quat(const Quaternion& g, double lo, double hi, EncodingMode mode) {
    const double n = norm(g);
    return std::clamp(mode == EncodingMode::QuatShiftedNorm ? lo + n : n, lo, hi);
}

/// Component range for the initial quaternion of one coordinate: chosen so
/// decoded values cover [0, max(|lo|,|hi|)] under QuatNorm and the full
/// [lo, hi] under QuatShiftedNorm.
inline double init_scale(double lo, double hi, EncodingMode mode) {
    if (mode == EncodingMode::QuatShiftedNorm) {
        return (hi - lo) / 2.0;
    }
    return std::max(std::abs(lo), std::abs(hi)) / 2.0;
}

/// Genotype -> phenotype. The result is always inside the box, whatever the
/// genotype holds.
std::vector<double> decode(const Genotype& g, const BoundsBox& b, EncodingMode mode);

/// Phenotype -> genotype, a right inverse of decode. Real: identity.
/// Quaternion modes embed into the scalar slot: (x, 0, 0, 0) for QuatNorm
/// (exact round trip only for x >= 0, the norm drops the sign) and
/// (x - lower, 0, 0, 0) for QuatShiftedNorm (exact for all in-box x).
/// Rejects points outside the box.
Genotype encode(std::span<const double> x, const BoundsBox& b, EncodingMode mode);

/// Random genotype whose decoded point covers the box. Consumes exactly
/// dim draws under Real and 4*dim draws under the quaternion modes.
Genotype init_genotype(RandomStream& rng, const BoundsBox& b, EncodingMode mode);

} // namespace qbat
