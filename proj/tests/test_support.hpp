#pragma once

#include <stdexcept>
#include <vector>

#include "qbat/rng.hpp"

namespace qbat::testing {

/// Plays back a fixed tape of draws; throws once the tape runs out so a
/// test notices when an algorithm consumes more than documented.
class ReplayStream final : public RandomStream {
public:
    explicit ReplayStream(std::vector<double> tape) : tape_(std::move(tape)) {}

    double next() override {
        if (pos_ >= tape_.size()) {
            throw std::out_of_range("replay tape exhausted after " + std::to_string(pos_) +
                                    " draws");
        }
        return tape_[pos_++];
    }

    std::size_t consumed() const { return pos_; }
    std::size_t remaining() const { return tape_.size() - pos_; }

private:
    std::vector<double> tape_;
    std::size_t pos_ = 0;
};

/// Forwards to another stream, keeping a copy of every draw handed out.
class RecordingStream final : public RandomStream {
public:
    explicit RecordingStream(RandomStream& inner) : inner_(&inner) {}

    double next() override {
        const double v = inner_->next();
        tape_.push_back(v);
        return v;
    }

    const std::vector<double>& tape() const { return tape_; }

private:
    RandomStream* inner_;
    std::vector<double> tape_;
};

} // namespace qbat::testing
