#include "passby/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace passby {

MatchResult match(const std::vector<double>& detections,
                  const std::vector<double>& truth,
                  double tolerance_s) {
    if (!(tolerance_s > 0.0))
        throw std::invalid_argument("match: tolerance must be positive");

    struct Candidate {
        double abs_dt, t_min, t_max;
        std::size_t i_min, i_max;
        std::size_t det, tru;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < detections.size(); ++i) {
        for (std::size_t j = 0; j < truth.size(); ++j) {
            const double dt = std::abs(detections[i] - truth[j]);
            if (dt > tolerance_s) continue;
            candidates.push_back({dt,
                                  std::min(detections[i], truth[j]),
                                  std::max(detections[i], truth[j]),
                                  std::min(i, j), std::max(i, j),
                                  i, j});
        }
    }
    // Keys up to i_max are symmetric in the two roles, so swapping the input
    // lists replays the same greedy order.
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                  return std::tie(a.abs_dt, a.t_min, a.t_max, a.i_min, a.i_max, a.det)
                       < std::tie(b.abs_dt, b.t_min, b.t_max, b.i_min, b.i_max, b.det);
              });

    MatchResult result;
    std::vector<bool> det_used(detections.size(), false);
    std::vector<bool> tru_used(truth.size(), false);
    for (const Candidate& c : candidates) {
        if (det_used[c.det] || tru_used[c.tru]) continue;
        det_used[c.det] = true;
        tru_used[c.tru] = true;
        result.pairs.emplace_back(c.det, c.tru);
    }
    for (std::size_t i = 0; i < detections.size(); ++i)
        if (!det_used[i]) result.unmatched_detections.push_back(i);
    for (std::size_t j = 0; j < truth.size(); ++j)
        if (!tru_used[j]) result.unmatched_truth.push_back(j);
    return result;
}

EvalReport report(const std::vector<double>& detections,
                  const std::vector<double>& truth,
                  double tolerance_s) {
    const MatchResult m = match(detections, truth, tolerance_s);

    EvalReport r;
    r.events_e = truth.size();
    r.detections_d = detections.size();
    r.false_positives_p = m.unmatched_detections.size();
    r.false_negatives_n = m.unmatched_truth.size();
    r.efficacy_eta = r.detections_d - r.false_positives_p;
    r.match_tolerance_s = tolerance_s;

    if (r.events_e > 0) {
        const double e = static_cast<double>(r.events_e);
        r.ratios = EvalReport::Ratios{
            100.0 * static_cast<double>(r.events_e) / e,
            100.0 * static_cast<double>(r.detections_d) / e,
            100.0 * static_cast<double>(r.false_positives_p) / e,
            100.0 * static_cast<double>(r.false_negatives_n) / e,
            100.0 * static_cast<double>(r.efficacy_eta) / e,
        };
    }
    return r;
}

} // namespace passby
