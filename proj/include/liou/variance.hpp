#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "liou/sieve.hpp"

namespace liou {

using uint128 = unsigned __int128;

// Abstract +/-1 sequence; the variance engine never assumes Liouville.
class SignSource {
public:
    virtual ~SignSource() = default;
    // out[i] = sign(start + i)
    virtual void fill(std::uint64_t start, std::span<std::int8_t> out) const = 0;
};

class StoreSigns final : public SignSource {
public:
    explicit StoreSigns(const LambdaStore& store) : store_(&store) {}
    void fill(std::uint64_t start, std::span<std::int8_t> out) const override;

private:
    const LambdaStore* store_;
};

// Test hook: arbitrary injected sequence.
class CallableSigns final : public SignSource {
public:
    explicit CallableSigns(std::function<int(std::uint64_t)> fn) : fn_(std::move(fn)) {}
    void fill(std::uint64_t start, std::span<std::int8_t> out) const override;

private:
    std::function<int(std::uint64_t)> fn_;
};

enum class PolicyKind { FullGrid, Strided, Random };

struct SamplePolicy {
    PolicyKind kind = PolicyKind::FullGrid;
    std::uint64_t stride = 1;              // Strided
    std::uint64_t count = 0;               // Random
    std::optional<std::uint64_t> seed;     // Random; required

    static SamplePolicy full_grid() { return {}; }
    static SamplePolicy strided(std::uint64_t k) {
        return {PolicyKind::Strided, k, 0, std::nullopt};
    }
    static SamplePolicy random(std::uint64_t count, std::uint64_t seed) {
        return {PolicyKind::Random, 1, count, seed};
    }

    std::string describe() const;
};

struct VarianceReport {
    std::uint64_t X = 0;
    std::uint64_t h = 0;
    std::string sample_policy;
    std::uint64_t num_samples = 0;
    uint128 sum_squares = 0;       // exact integer sum of |S(x,h)|^2
    double V = 0.0;                // sum_squares / num_samples
    double v_over_h = 0.0;
    double v_over_h2 = 0.0;
    double v_over_h_log6 = 0.0;    // V / (h * (log X)^6), natural log
};

// Mean of |S(x,h)|^2 over sampled x in [X, 2X-1], S over half-open windows.
// Full-grid sampling slides the window; other policies sum each window
// directly. Sum of squares is accumulated in 128-bit integers per fixed
// block and reduced in ascending block order.
VarianceReport variance(std::uint64_t X, std::uint64_t h, const SamplePolicy& policy,
                        const SignSource& signs, unsigned threads = 1);

struct HScanResult {
    std::vector<VarianceReport> reports;
    bool complete = true;
    std::string error;          // first failure, when !complete
    std::size_t failed_index = 0;
};

// One full-grid report per h, ascending; aborts on the first per-entry error
// and flags the partial result.
HScanResult h_scan(std::uint64_t X, std::span<const std::uint64_t> h_values,
                   const SignSource& signs, unsigned threads = 1);

// Predicted per-sample variance envelope:
// C * h^2 * (log X)^6 * (1/h + 1/H_c(X)), with H_c from the smooth module.
double predicted_bound(std::uint64_t X, std::uint64_t h, double C, double c);

}  // namespace liou
