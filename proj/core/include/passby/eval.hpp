#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace passby {

struct MatchResult {
    std::vector<std::pair<std::size_t, std::size_t>> pairs; ///< (detection, truth) indices
    std::vector<std::size_t> unmatched_detections;
    std::vector<std::size_t> unmatched_truth;
};

/// Greedy one-to-one matching: candidate pairs with |dt| <= tolerance are
/// taken in ascending order of |dt|, each detection and each truth instant
/// used at most once. Symmetric under swapping the two lists.
MatchResult match(const std::vector<double>& detections,
                  const std::vector<double>& truth,
                  double tolerance_s = 2.0);

/// Counting scorecard: events e, detections d, false positives p, false
/// negatives n, and efficacy eta = d - p, plus each count as a percentage
/// of e. The identities eta = d - p and eta = e - n hold on every report.
struct EvalReport {
    std::size_t events_e = 0;
    std::size_t detections_d = 0;
    std::size_t false_positives_p = 0;
    std::size_t false_negatives_n = 0;
    std::size_t efficacy_eta = 0;

    struct Ratios {
        double events_pct = 0.0; ///< always 100
        double detections_pct = 0.0;
        double false_positives_pct = 0.0;
        double false_negatives_pct = 0.0;
        double efficacy_pct = 0.0;
    };
    /// 100 * count / e for each count; absent when e = 0.
    std::optional<Ratios> ratios;

    double match_tolerance_s = 0.0;
};

EvalReport report(const std::vector<double>& detections,
                  const std::vector<double>& truth,
                  double tolerance_s = 2.0);

} // namespace passby
