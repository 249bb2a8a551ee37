#include "qbat/encoding.hpp"

#include <stdexcept>
#include <string>

namespace qbat {

std::string_view to_string(EncodingMode mode) {
    switch (mode) {
        case EncodingMode::Real: return "real";
        case EncodingMode::QuatNorm: return "quat-norm";
        case EncodingMode::QuatShiftedNorm: return "quat-shifted-norm";
    }
    return "?";
}

EncodingMode encoding_from_string(std::string_view text) {
    if (text == "real") return EncodingMode::Real;
    if (text == "quat-norm") return EncodingMode::QuatNorm;
    if (text == "quat-shifted-norm") return EncodingMode::QuatShiftedNorm;
    throw std::invalid_argument("unknown encoding \"" + std::string(text) + "\"");
}

BoundsBox::BoundsBox(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size()) {
        throw std::invalid_argument("BoundsBox: lower and upper differ in length");
    }
    if (lower.empty()) {
        throw std::invalid_argument("BoundsBox: empty bounds");
    }
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] < upper[j])) {
            throw std::invalid_argument("BoundsBox: lower[" + std::to_string(j) +
                                        "] must be below upper[" + std::to_string(j) + "]");
        }
    }
}

BoundsBox BoundsBox::uniform(std::size_t dim, double lo, double hi) {
    return BoundsBox(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

namespace {

void check_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw std::invalid_argument(std::string(what) + ": dimension " + std::to_string(got) +
                                    " does not match bounds dimension " + std::to_string(want));
    }
}

} // namespace

std::vector<double> decode(const Genotype& g, const BoundsBox& b, EncodingMode mode) {
    check_dim(g.dim(), b.dim(), "decode");
    std::vector<double> out(b.dim());
    if (mode == EncodingMode::Real) {
        if (!g.is_real()) throw std::invalid_argument("decode: real mode needs a real genotype");
        const auto& v = g.reals();
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[j] = decode_real(v[j], b.lower[j], b.upper[j]);
        }
    } else {
        if (g.is_real()) throw std::invalid_argument("decode: quaternion mode needs a quaternion genotype");
        const auto& v = g.quaternions();
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[j] = decode_quat(v[j], b.lower[j], b.upper[j], mode);
        }
    }
    return out;
}

Genotype encode(std::span<const double> x, const BoundsBox& b, EncodingMode mode) {
    check_dim(x.size(), b.dim(), "encode");
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] >= b.lower[j] && x[j] <= b.upper[j])) {
            throw std::invalid_argument("encode: coordinate " + std::to_string(j) +
                                        " lies outside the bounds box");
        }
    }
    if (mode == EncodingMode::Real) {
        return Genotype(std::vector<double>(x.begin(), x.end()));
    }
    std::vector<Quaternion> g(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double s = mode == EncodingMode::QuatShiftedNorm ? x[j] - b.lower[j] : x[j];
        g[j] = Quaternion{s, 0.0, 0.0, 0.0};
    }
    return Genotype(std::move(g));
}

Genotype init_genotype(RandomStream& rng, const BoundsBox& b, EncodingMode mode) {
    if (mode == EncodingMode::Real) {
        std::vector<double> v(b.dim());
        for (std::size_t j = 0; j < v.size(); ++j) {
            v[j] = rng.uniform(b.lower[j], b.upper[j]);
        }
        return Genotype(std::move(v));
    }
    std::vector<Quaternion> g(b.dim());
    for (std::size_t j = 0; j < g.size(); ++j) {
        g[j] = random_quaternion(rng, init_scale(b.lower[j], b.upper[j], mode));
    }
    return Genotype(std::move(g));
}

} // namespace qbat
