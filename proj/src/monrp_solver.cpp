#include "relplan/monrp_solver.hpp"

#include "relplan/feature_model.hpp" // kWeightSumTolerance
#include "relplan/rng.hpp"
#include "relplan/text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace relplan::monrp {

namespace {

void require(bool cond, const std::string& msg)
{
    if (!cond)
        throw std::invalid_argument(msg);
}

std::vector<std::string> default_labels(std::string_view prefix, std::size_t count)
{
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(std::string(prefix) + std::to_string(i + 1));
    return out;
}

bool front_order(const ReleaseCandidate& a, const ReleaseCandidate& b)
{
    if (a.cost_total != b.cost_total)
        return a.cost_total < b.cost_total;
    if (a.value_total != b.value_total)
        return a.value_total > b.value_total;
    return a.x < b.x;
}

} // namespace

// ---------------------------------------------------------------------------
// Instance
// ---------------------------------------------------------------------------

MonrpInstance::MonrpInstance(std::vector<std::string> stakeholder_ids, std::vector<double> weights,
                             std::vector<std::string> feature_ids, std::vector<double> costs,
                             std::vector<std::vector<double>> values)
    : stakeholder_ids_(std::move(stakeholder_ids)),
      weights_(std::move(weights)),
      feature_ids_(std::move(feature_ids)),
      costs_(std::move(costs)),
      values_(std::move(values))
{
    const std::size_t m = weights_.size();
    const std::size_t n = costs_.size();
    require(m >= 1, "need at least one stakeholder");
    require(n >= 1, "need at least one feature");
    require(stakeholder_ids_.size() == m, "stakeholder label count != weight count");
    require(feature_ids_.size() == n, "feature label count != cost count");
    require(values_.size() == m, "value matrix must have one row per stakeholder (" +
                                     std::to_string(values_.size()) + " rows, " +
                                     std::to_string(m) + " stakeholders)");
    for (const auto& row : values_)
        require(row.size() == n, "value matrix row length != feature count");

    double sum = 0.0;
    for (double w : weights_) {
        require(std::isfinite(w) && w >= 0.0 && w <= 1.0, "stakeholder weight outside [0, 1]");
        sum += w;
    }
    require(std::abs(sum - 1.0) <= feature_model::kWeightSumTolerance,
            "stakeholder weights sum to " + text::format_double(sum) + ", expected 1");
    for (double c : costs_)
        require(std::isfinite(c) && c >= 0.0, "feature cost must be finite and >= 0");
    for (const auto& row : values_) {
        for (double v : row)
            require(std::isfinite(v) && v >= 0.0, "value entry must be finite and >= 0");
    }
    std::set<std::string> sid(stakeholder_ids_.begin(), stakeholder_ids_.end());
    require(sid.size() == m, "duplicate stakeholder label");
    std::set<std::string> fid(feature_ids_.begin(), feature_ids_.end());
    require(fid.size() == n, "duplicate feature label");
}

MonrpInstance::MonrpInstance(std::vector<double> weights, std::vector<double> costs,
                             std::vector<std::vector<double>> values)
    // no moves: argument evaluation order must not race the size() reads
    : MonrpInstance(default_labels("s", weights.size()), weights,
                    default_labels("f", costs.size()), costs, values)
{
}

// ---------------------------------------------------------------------------
// Objectives
// ---------------------------------------------------------------------------

std::vector<double> scores(const MonrpInstance& inst)
{
    const auto& w = inst.weights();
    const auto& values = inst.values();
    std::vector<double> out(inst.num_features(), 0.0);
    for (std::size_t i = 0; i < inst.num_features(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < inst.num_stakeholders(); ++j)
            s += w[j] * values[j][i];
        out[i] = s;
    }
    return out;
}

namespace {

std::pair<double, double> evaluate_with(const std::vector<double>& score,
                                        const std::vector<double>& cost,
                                        const DecisionVector& x)
{
    double f1 = 0.0;
    double f2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) {
            f1 += score[i];
            f2 += cost[i];
        }
    }
    return {f1, f2};
}

} // namespace

std::pair<double, double> evaluate(const MonrpInstance& inst, const DecisionVector& x)
{
    if (x.size() != inst.num_features())
        throw std::invalid_argument("decision vector length " + std::to_string(x.size()) +
                                    " != feature count " + std::to_string(inst.num_features()));
    return evaluate_with(scores(inst), inst.costs(), x);
}

bool dominates(const ReleaseCandidate& a, const ReleaseCandidate& b)
{
    if (a.value_total < b.value_total || a.cost_total > b.cost_total)
        return false;
    return a.value_total > b.value_total || a.cost_total < b.cost_total;
}

// ---------------------------------------------------------------------------
// Exact oracle
// ---------------------------------------------------------------------------

ParetoFront brute_force_front(const MonrpInstance& inst)
{
    const std::size_t n = inst.num_features();
    if (n > 20)
        throw std::invalid_argument("brute force is limited to 20 features, got " +
                                    std::to_string(n));
    const std::vector<double> score = scores(inst);
    const auto& cost = inst.costs();

    const std::uint32_t total = std::uint32_t{1} << n;
    auto bits_of = [&](std::uint32_t mask) {
        DecisionVector x(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = (mask >> i) & 1u;
        return x;
    };

    std::vector<std::pair<double, double>> objs(total);
    for (std::uint32_t mask = 0; mask < total; ++mask)
        objs[mask] = evaluate_with(score, cost, bits_of(mask));

    std::vector<std::uint32_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (objs[a].second != objs[b].second)
            return objs[a].second < objs[b].second;
        return objs[a].first > objs[b].first;
    });

    // Sweep by ascending cost: within one cost level only the maximal value
    // survives, and it must strictly exceed the best value seen at any
    // cheaper level.
    ParetoFront front;
    front.provenance = Provenance::Exact;
    double best_value = -std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        const double level_cost = objs[order[i]].second;
        const double level_value = objs[order[i]].first;
        while (j < order.size() && objs[order[j]].second == level_cost)
            ++j;
        if (level_value > best_value) {
            for (std::size_t k = i; k < j; ++k) {
                if (objs[order[k]].first == level_value)
                    front.candidates.push_back(ReleaseCandidate{
                        bits_of(order[k]), objs[order[k]].first, objs[order[k]].second});
            }
            best_value = level_value;
        }
        i = j;
    }
    std::sort(front.candidates.begin(), front.candidates.end(), front_order);
    return front;
}

// ---------------------------------------------------------------------------
// NSGA-II style search
// ---------------------------------------------------------------------------

double SearchParams::resolved_mutation_rate(std::size_t n) const
{
    return mutation_rate ? *mutation_rate : 1.0 / static_cast<double>(n);
}

void SearchParams::validate() const
{
    require(population >= 4 && population % 2 == 0, "population must be even and >= 4");
    require(generations >= 0, "generations must be >= 0");
    require(crossover_rate >= 0.0 && crossover_rate <= 1.0, "crossover_rate must be in [0, 1]");
    if (mutation_rate)
        require(*mutation_rate >= 0.0 && *mutation_rate <= 1.0, "mutation_rate must be in [0, 1]");
}

namespace {

struct Individual {
    DecisionVector x;
    double value = 0.0;
    double cost = 0.0;
    int rank = 0;
    double crowding = 0.0;
};

bool dominates_min(const Individual& a, const Individual& b)
{
    if (a.value < b.value || a.cost > b.cost)
        return false;
    return a.value > b.value || a.cost < b.cost;
}

/// Deb's fast non-dominated sort; returns fronts of indices and fills ranks.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::vector<Individual>& pop)
{
    const std::size_t n = pop.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts(1);

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q)
                continue;
            if (dominates_min(pop[p], pop[q]))
                dominated[p].push_back(q);
            else if (dominates_min(pop[q], pop[p]))
                ++domination_count[p];
        }
        if (domination_count[p] == 0) {
            pop[p].rank = 0;
            fronts[0].push_back(p);
        }
    }
    std::size_t i = 0;
    while (!fronts[i].empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : fronts[i]) {
            for (std::size_t q : dominated[p]) {
                if (--domination_count[q] == 0) {
                    pop[q].rank = static_cast<int>(i) + 1;
                    next.push_back(q);
                }
            }
        }
        ++i;
        fronts.push_back(std::move(next));
    }
    fronts.pop_back();
    return fronts;
}

void assign_crowding(std::vector<Individual>& pop, const std::vector<std::size_t>& front)
{
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t idx : front)
        pop[idx].crowding = 0.0;
    if (front.size() <= 2) {
        for (std::size_t idx : front)
            pop[idx].crowding = inf;
        return;
    }
    auto sweep = [&](auto key) {
        std::vector<std::size_t> order = front;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (key(pop[a]) != key(pop[b]))
                return key(pop[a]) < key(pop[b]);
            return a < b;
        });
        const double lo = key(pop[order.front()]);
        const double hi = key(pop[order.back()]);
        pop[order.front()].crowding = inf;
        pop[order.back()].crowding = inf;
        if (hi == lo)
            return;
        for (std::size_t k = 1; k + 1 < order.size(); ++k) {
            if (pop[order[k]].crowding == inf)
                continue;
            pop[order[k]].crowding +=
                (key(pop[order[k + 1]]) - key(pop[order[k - 1]])) / (hi - lo);
        }
    };
    sweep([](const Individual& ind) { return ind.value; });
    sweep([](const Individual& ind) { return ind.cost; });
}

} // namespace

ParetoFront nsga2_search(const MonrpInstance& inst, const SearchParams& params)
{
    params.validate();
    const std::size_t n = inst.num_features();
    const std::size_t pop_size = static_cast<std::size_t>(params.population);
    const double mutation = params.resolved_mutation_rate(n);
    require(mutation >= 0.0 && mutation <= 1.0, "mutation_rate must be in [0, 1]");

    const std::vector<double> score = scores(inst);
    const auto& cost = inst.costs();
    std::mt19937_64 gen(params.seed);

    auto make = [&](DecisionVector x) {
        Individual ind;
        auto [f1, f2] = evaluate_with(score, cost, x);
        ind.x = std::move(x);
        ind.value = f1;
        ind.cost = f2;
        return ind;
    };

    std::vector<Individual> pop;
    pop.reserve(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
        DecisionVector x(n);
        for (auto& bit : x)
            bit = rng::chance(gen, 0.5) ? 1 : 0;
        pop.push_back(make(std::move(x)));
    }

    auto tournament = [&]() -> const Individual& {
        const std::size_t a = static_cast<std::size_t>(rng::below(gen, pop.size()));
        const std::size_t b = static_cast<std::size_t>(rng::below(gen, pop.size()));
        if (pop[a].rank != pop[b].rank)
            return pop[a].rank < pop[b].rank ? pop[a] : pop[b];
        if (pop[a].crowding != pop[b].crowding)
            return pop[a].crowding > pop[b].crowding ? pop[a] : pop[b];
        return rng::chance(gen, 0.5) ? pop[a] : pop[b];
    };

    for (int g = 0; g < params.generations; ++g) {
        auto fronts = non_dominated_sort(pop);
        for (const auto& front : fronts)
            assign_crowding(pop, front);

        std::vector<Individual> offspring;
        offspring.reserve(pop_size);
        while (offspring.size() < pop_size) {
            DecisionVector c1 = tournament().x;
            DecisionVector c2 = tournament().x;
            if (rng::chance(gen, params.crossover_rate)) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (rng::chance(gen, 0.5))
                        std::swap(c1[i], c2[i]);
                }
            }
            for (auto* child : {&c1, &c2}) {
                for (auto& bit : *child) {
                    if (rng::chance(gen, mutation))
                        bit ^= 1;
                }
                offspring.push_back(make(std::move(*child)));
            }
        }

        // Elitist environmental selection over parents + offspring.
        std::vector<Individual> combined = std::move(pop);
        combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                        std::make_move_iterator(offspring.end()));
        auto combined_fronts = non_dominated_sort(combined);
        for (const auto& front : combined_fronts)
            assign_crowding(combined, front);

        std::vector<Individual> next;
        next.reserve(pop_size);
        for (const auto& front : combined_fronts) {
            if (next.size() + front.size() <= pop_size) {
                for (std::size_t idx : front)
                    next.push_back(std::move(combined[idx]));
                if (next.size() == pop_size)
                    break;
            } else {
                std::vector<std::size_t> order = front;
                std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    return combined[a].crowding > combined[b].crowding;
                });
                for (std::size_t idx : order) {
                    if (next.size() == pop_size)
                        break;
                    next.push_back(std::move(combined[idx]));
                }
                break;
            }
        }
        pop = std::move(next);
    }

    auto final_fronts = non_dominated_sort(pop);
    ParetoFront front;
    front.provenance = Provenance::Metaheuristic;
    front.search_params = params;
    std::set<DecisionVector> seen;
    for (std::size_t idx : final_fronts.front()) {
        if (seen.insert(pop[idx].x).second)
            front.candidates.push_back(
                ReleaseCandidate{pop[idx].x, pop[idx].value, pop[idx].cost});
    }
    std::sort(front.candidates.begin(), front.candidates.end(), front_order);
    return front;
}

// ---------------------------------------------------------------------------
// Hypervolume
// ---------------------------------------------------------------------------

double hypervolume(const ParetoFront& front, const MonrpInstance& inst)
{
    if (front.candidates.empty())
        throw std::invalid_argument("hypervolume of an empty front");
    const std::vector<double> score = scores(inst);
    const double sum_score = std::accumulate(score.begin(), score.end(), 0.0);
    const double sum_cost =
        std::accumulate(inst.costs().begin(), inst.costs().end(), 0.0);
    const double ref1 = 1.01 * sum_score;
    const double ref2 = 1.01 * sum_cost;

    std::vector<std::pair<double, double>> pts; // minimization space
    pts.reserve(front.candidates.size());
    for (const auto& c : front.candidates)
        pts.emplace_back(sum_score - c.value_total, c.cost_total);
    std::sort(pts.begin(), pts.end());

    double hv = 0.0;
    double y = ref2;
    for (const auto& [g1, g2] : pts) {
        if (g2 < y) {
            hv += (ref1 - g1) * (y - g2);
            y = g2;
        }
    }
    return hv;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

MonrpInstance random_instance(const RandomInstanceParams& params)
{
    require(params.stakeholders >= 1, "need at least one stakeholder");
    require(params.features >= 1, "need at least one feature");
    require(params.cost_range.first > 0.0 && params.cost_range.second >= params.cost_range.first,
            "cost range must be positive and ordered");
    require(params.value_range.first > 0.0 &&
                params.value_range.second >= params.value_range.first,
            "value range must be positive and ordered");
    require(params.interest_prob >= 0.0 && params.interest_prob <= 1.0,
            "interest_prob must be in [0, 1]");

    std::mt19937_64 gen(params.seed);
    const std::size_t m = params.stakeholders;
    const std::size_t n = params.features;

    std::vector<double> weights(m);
    double sum = 0.0;
    for (auto& w : weights) {
        w = 1.0 - rng::unit(gen); // (0, 1]
        sum += w;
    }
    for (auto& w : weights)
        w /= sum;
    // Nudge the last weight so the simplex constraint holds exactly enough.
    double acc = std::accumulate(weights.begin(), weights.end(), 0.0);
    weights.back() += 1.0 - acc;

    std::vector<std::vector<double>> values(m, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (rng::chance(gen, params.interest_prob))
                values[j][i] =
                    rng::uniform(gen, params.value_range.first, params.value_range.second);
        }
    }
    std::vector<double> costs(n);
    for (auto& c : costs)
        c = rng::uniform(gen, params.cost_range.first, params.cost_range.second);

    return MonrpInstance(std::move(weights), std::move(costs), std::move(values));
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

std::string join_doubles(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0)
            out += ',';
        out += text::format_double(v[i]);
    }
    return out;
}

std::vector<double> parse_doubles(std::string_view line)
{
    std::vector<double> out;
    for (const auto& field : text::split(line, ','))
        out.push_back(text::parse_double(field));
    return out;
}

void check_label(const std::string& label)
{
    if (label.empty() || label.find(',') != std::string::npos ||
        label.find('\n') != std::string::npos)
        throw std::invalid_argument("label unsuitable for CSV: '" + label + "'");
}

} // namespace

std::string instance_to_csv(const MonrpInstance& inst)
{
    for (const auto& id : inst.stakeholder_ids())
        check_label(id);
    for (const auto& id : inst.feature_ids())
        check_label(id);

    std::string out;
    out += text::join(inst.stakeholder_ids(), ",") + "\n";
    out += join_doubles(inst.weights()) + "\n";
    for (const auto& row : inst.values())
        out += join_doubles(row) + "\n";
    out += join_doubles(inst.costs()) + "\n";
    out += text::join(inst.feature_ids(), ",") + "\n";
    return out;
}

MonrpInstance instance_from_csv(std::string_view csv)
{
    std::vector<std::string> lines = text::split_lines(csv);
    std::erase_if(lines, [](const std::string& l) { return text::trim(l).empty(); });
    if (lines.size() < 5)
        throw std::invalid_argument("instance CSV needs at least 5 rows "
                                    "(ids, weights, values, costs, feature ids)");
    const std::size_t m = lines.size() - 4;
    std::vector<std::string> stakeholder_ids = text::split(lines[0], ',');
    std::vector<double> weights = parse_doubles(lines[1]);
    std::vector<std::vector<double>> values;
    values.reserve(m);
    for (std::size_t j = 0; j < m; ++j)
        values.push_back(parse_doubles(lines[2 + j]));
    std::vector<double> costs = parse_doubles(lines[2 + m]);
    std::vector<std::string> feature_ids = text::split(lines[3 + m], ',');
    for (auto& id : stakeholder_ids)
        id = std::string(text::trim(id));
    for (auto& id : feature_ids)
        id = std::string(text::trim(id));
    return MonrpInstance(std::move(stakeholder_ids), std::move(weights), std::move(feature_ids),
                         std::move(costs), std::move(values));
}

std::string front_to_csv(const ParetoFront& front)
{
    std::string out = "candidate_id,value_total,cost_total,x_bits\n";
    for (std::size_t i = 0; i < front.candidates.size(); ++i) {
        const auto& c = front.candidates[i];
        std::string bits(c.x.size(), '0');
        for (std::size_t k = 0; k < c.x.size(); ++k) {
            if (c.x[k])
                bits[k] = '1';
        }
        out += std::to_string(i + 1) + "," + text::format_double(c.value_total) + "," +
               text::format_double(c.cost_total) + "," + bits + "\n";
    }
    return out;
}

std::string front_to_plot(const ParetoFront& front)
{
    std::string out = "# cost_total value_total\n";
    for (const auto& c : front.candidates)
        out +=
            text::format_double(c.cost_total) + " " + text::format_double(c.value_total) + "\n";
    return out;
}

} // namespace relplan::monrp
