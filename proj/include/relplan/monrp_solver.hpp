#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relplan::monrp {

/// Immutable problem instance: m stakeholders with weights on the unit
/// simplex, n features with non-negative costs, and an m-by-n value matrix
/// (values[j][i] = value of feature i to stakeholder j). The constructor
/// validates every invariant and throws std::invalid_argument.
class MonrpInstance {
public:
    MonrpInstance(std::vector<std::string> stakeholder_ids, std::vector<double> weights,
                  std::vector<std::string> feature_ids, std::vector<double> costs,
                  std::vector<std::vector<double>> values);

    /// Convenience constructor with generated labels (s1..,f1..).
    MonrpInstance(std::vector<double> weights, std::vector<double> costs,
                  std::vector<std::vector<double>> values);

    std::size_t num_stakeholders() const { return weights_.size(); }
    std::size_t num_features() const { return costs_.size(); }

    const std::vector<std::string>& stakeholder_ids() const { return stakeholder_ids_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<std::string>& feature_ids() const { return feature_ids_; }
    const std::vector<double>& costs() const { return costs_; }
    const std::vector<std::vector<double>>& values() const { return values_; }

    bool operator==(const MonrpInstance&) const = default;

private:
    std::vector<std::string> stakeholder_ids_;
    std::vector<double> weights_;
    std::vector<std::string> feature_ids_;
    std::vector<double> costs_;
    std::vector<std::vector<double>> values_;
};

/// x[i] selects feature i for the release (0/1).
using DecisionVector = std::vector<std::uint8_t>;

struct ReleaseCandidate {
    DecisionVector x;
    double value_total = 0.0; // f1, maximized
    double cost_total = 0.0;  // f2, minimized

    bool operator==(const ReleaseCandidate&) const = default;
};

enum class Provenance { Exact, Metaheuristic };

struct SearchParams {
    int population = 100; // even, >= 4
    int generations = 250;
    double crossover_rate = 0.9;
    std::optional<double> mutation_rate; // default 1/n
    std::uint64_t seed = 0;

    double resolved_mutation_rate(std::size_t n) const;
    void validate() const; // throws std::invalid_argument
};

/// Mutually non-dominated candidates, sorted by ascending cost, then
/// descending value, then lexicographic decision vector; duplicate decision
/// vectors removed, duplicate objective pairs with distinct vectors kept.
struct ParetoFront {
    std::vector<ReleaseCandidate> candidates;
    Provenance provenance = Provenance::Exact;
    std::optional<SearchParams> search_params; // Metaheuristic only
};

/// score_i = sum_j w_j * value(f_i, s_j).
std::vector<double> scores(const MonrpInstance& inst);

/// (f1, f2) = (sum_i score_i * x_i, sum_i cost_i * x_i).
std::pair<double, double> evaluate(const MonrpInstance& inst, const DecisionVector& x);

/// a dominates b: at least as good in both objectives, strictly better in one.
bool dominates(const ReleaseCandidate& a, const ReleaseCandidate& b);

/// Exhaustive oracle over all 2^n decision vectors; guarded to n <= 20.
ParetoFront brute_force_front(const MonrpInstance& inst);

/// Elitist non-dominated-sorting evolutionary search (binary tournament by
/// rank and crowding distance, uniform crossover, per-bit mutation). Pure
/// function of (instance, params): fixed seeds reproduce fronts byte for
/// byte.
ParetoFront nsga2_search(const MonrpInstance& inst, const SearchParams& params);

/// 2-D hypervolume of the front in minimization space
/// (sum(score) - f1, f2) against the reference point
/// (1.01 * sum(score), 1.01 * sum(cost)).
double hypervolume(const ParetoFront& front, const MonrpInstance& inst);

struct RandomInstanceParams {
    std::size_t stakeholders = 0;
    std::size_t features = 0;
    std::uint64_t seed = 0;
    std::pair<double, double> cost_range{1.0, 10.0};
    std::pair<double, double> value_range{1.0, 10.0};
    double interest_prob = 0.3;
};

/// Seeded generator: weights uniform then normalized; each (stakeholder,
/// feature) pair interested with interest_prob, value uniform in value_range
/// otherwise 0; costs uniform in cost_range.
MonrpInstance random_instance(const RandomInstanceParams& params);

// --- serialization -------------------------------------------------------

/// CSV layout: stakeholder ids / weights / m value rows / costs / feature ids.
std::string instance_to_csv(const MonrpInstance& inst);
MonrpInstance instance_from_csv(std::string_view csv);

/// Columns: candidate_id,value_total,cost_total,x_bits.
std::string front_to_csv(const ParetoFront& front);

/// Gnuplot-ready two-column data: cost_total value_total.
std::string front_to_plot(const ParetoFront& front);

} // namespace relplan::monrp
