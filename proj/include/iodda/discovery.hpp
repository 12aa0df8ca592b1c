// Copyright 2026 The IODDA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "iodda/correlation.hpp"
#include "iodda/ml/forest.hpp"
#include "iodda/ml/rules.hpp"
#include "iodda/shift_index.hpp"

namespace iodda {

struct MiningConfig {
    double min_shift = 0.2;
    std::size_t max_shift = 3;
    double min_traceprop = 0.3;
    double min_corr = 0.3;
    double min_dev = 0.3;
    double min_support = 0.3;
    ml::LearnerConfig learner;
    std::uint64_t rng_seed = 42;

    void validate() const
    {
        auto fraction = [](double v, const char* name) {
            if (!(v >= 0.0 && v <= 1.0))
                throw Error(ErrorCode::InvalidConfig, std::string(name) + " must lie in [0, 1]");
        };
        fraction(min_shift, "min_shift");
        fraction(min_traceprop, "min_traceprop");
        fraction(min_corr, "min_corr");
        fraction(min_dev, "min_dev");
        fraction(min_support, "min_support");
        if (max_shift < 1) throw Error(ErrorCode::InvalidConfig, "max_shift must be at least 1");
        if (learner.n_trees < 1) throw Error(ErrorCode::InvalidConfig, "n_trees must be at least 1");
        if (learner.cv_folds < 2) throw Error(ErrorCode::InvalidConfig, "cv_folds must be at least 2");
    }
};

/// Random forest gate result plus the tree kept for rule extraction.
struct PredictiveModel {
    Ataots output;
    std::vector<Ataots> inputs; ///< sorted; feature f of the encodings is inputs[f]
    ObjectSet traces;
    std::size_t rows = 0;
    double accuracy = 0;
    ml::Encodings encodings;
    ml::DecisionTree tree;
};

struct DrdEdge {
    Ataots from;
    Ataots to;
    ObjectSet support; ///< output objects with at least one temporally sound pair
    double correlation = 0;
};

struct DiscoveredDecision {
    Ataots node;
    std::set<Ataots> input_nodes;
    const PredictiveModel* model = nullptr;
};

struct DiscoveredDrd {
    Ataots top;
    std::set<Ataots> nodes;
    std::map<std::pair<Ataots, Ataots>, DrdEdge> edges; ///< keyed (from, to)
    std::map<Ataots, std::shared_ptr<const PredictiveModel>> models;
    ObjectSet trace_set;
    std::set<Ataots> expanded; ///< bookkeeping, not part of identity

    /// Nodes with incoming edges.
    std::vector<DiscoveredDecision> decisions() const
    {
        std::map<Ataots, DiscoveredDecision> out;
        for (const auto& [key, e] : edges) {
            auto& d = out[e.to];
            d.node = e.to;
            d.input_nodes.insert(e.from);
        }
        std::vector<DiscoveredDecision> list;
        for (auto& [node, d] : out) {
            if (auto it = models.find(node); it != models.end()) d.model = it->second.get();
            list.push_back(std::move(d));
        }
        return list;
    }

    bool is_decision(const Ataots& node) const
    {
        return std::any_of(edges.begin(), edges.end(), [&](const auto& kv) { return kv.second.to == node; });
    }

    bool reaches(const Ataots& from, const Ataots& to) const
    {
        std::vector<Ataots> stack{from};
        std::set<Ataots> seen;
        while (!stack.empty()) {
            auto n = stack.back();
            stack.pop_back();
            if (n == to) return true;
            if (!seen.insert(n).second) continue;
            for (const auto& [key, e] : edges)
                if (e.from == n) stack.push_back(e.to);
        }
        return false;
    }

    std::set<std::pair<Ataots, Ataots>> edge_set() const
    {
        std::set<std::pair<Ataots, Ataots>> out;
        for (const auto& [key, e] : edges) out.insert(key);
        return out;
    }
};

/// Pair collected for a candidate input: output object o, related object o2,
/// the input value (earlier shift) and the output value.
struct ValuePair {
    ObjectId object;
    ObjectId related;
    AttributeValue input;
    AttributeValue output;
};

struct InputCandidate {
    Ataots node;
    ObjectSet traces;
    double correlation = 0;
    std::vector<ValuePair> pairs;

    double correlation_on(const ObjectSet& subset) const
    {
        std::vector<AttributeValue> x, y;
        for (const auto& p : pairs)
            if (subset.count(p.object)) {
                x.push_back(p.input);
                y.push_back(p.output);
            }
        return x.size() < 2 ? 0.0 : correlate(x, y);
    }
};

struct InputModel {
    std::vector<Ataots> inputs;
    ObjectSet traces;

    friend bool operator==(const InputModel&, const InputModel&) = default;
};

inline bool is_subset(const ObjectSet& a, const ObjectSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline ObjectSet set_intersection(const ObjectSet& a, const ObjectSet& b)
{
    ObjectSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline ObjectSet set_difference(const ObjectSet& a, const ObjectSet& b)
{
    ObjectSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

/// Orders candidates by decreasing trace coverage, then by node.
inline void sort_candidates(std::vector<InputCandidate>& candidates)
{
    std::sort(candidates.begin(), candidates.end(), [](const InputCandidate& a, const InputCandidate& b) {
        if (a.traces.size() != b.traces.size()) return a.traces.size() > b.traces.size();
        return a.node < b.node;
    });
}

/// Groups sorted candidates into input models. trace_bound is
/// min_traceprop times the number of objects of the output type.
inline std::vector<InputModel> find_input_models(const std::vector<InputCandidate>& candidates, double trace_bound,
                                                 double min_dev)
{
    std::vector<InputModel> models;
    ObjectSet covered;
    auto with = [](std::vector<Ataots> inputs, const Ataots& n) {
        if (std::find(inputs.begin(), inputs.end(), n) == inputs.end()) inputs.push_back(n);
        std::sort(inputs.begin(), inputs.end());
        return inputs;
    };
    auto push_unique = [&](InputModel m) {
        for (auto& existing : models)
            if (existing.traces == m.traces) {
                for (const auto& n : m.inputs) existing.inputs = with(existing.inputs, n);
                return;
            }
        models.push_back(std::move(m));
    };
    for (const auto& c : candidates) {
        const auto& t = c.traces;
        const double size = static_cast<double>(t.size());
        std::vector<InputModel> spawned;
        bool merged = false;
        for (auto& m : models) {
            if (t == m.traces) {
                m.inputs = with(m.inputs, c.node);
                merged = true;
            } else if (is_subset(t, m.traces)) {
                if (size > trace_bound) spawned.push_back({with(m.inputs, c.node), t});
            } else {
                auto common = set_intersection(t, m.traces);
                if (!common.empty() && static_cast<double>(common.size()) / size > min_dev) {
                    auto rest = set_difference(t, m.traces);
                    spawned.push_back({with(m.inputs, c.node), rest});
                    covered.insert(t.begin(), t.end());
                }
            }
        }
        for (auto& m : spawned) push_unique(std::move(m));
        if (!merged && !is_subset(t, covered) && size > trace_bound) {
            push_unique({{c.node}, t});
            covered.insert(t.begin(), t.end());
        }
    }
    return models;
}

/// Outcome of one forest evaluation during mining.
struct ModelEvaluation {
    Ataots output;
    std::vector<Ataots> inputs;
    std::size_t traces = 0;
    double accuracy = 0;
    bool accepted = false;
};

/// Mining state over one log: shift index, candidate variables, memoized
/// model evaluations. Not thread-safe; use one per thread.
class DecisionMiner {
public:
    static constexpr std::size_t kMaxDepth = 10;

    DecisionMiner(const DocelLog& log, MiningConfig config)
        : log_(log), config_(validated(std::move(config))), index_(log),
          candidates_(candidate_variables(index_, log, config_.min_shift))
    {
    }

    const ShiftIndex& index() const noexcept { return index_; }
    const CandidateVariables& candidates() const noexcept { return candidates_; }
    const MiningConfig& config() const noexcept { return config_; }
    const std::vector<ModelEvaluation>& evaluations() const noexcept { return evaluations_; }

    std::vector<Ataots> top_nodes() const { return enumerate_ataots(index_, candidates_, config_.max_shift); }

    /// All DRDs, one attempt per top node, deduplicated.
    std::vector<DiscoveredDrd> run()
    {
        std::vector<DiscoveredDrd> all;
        for (const auto& top : top_nodes()) {
            drds_.clear();
            DiscoveredDrd seed;
            seed.top = top;
            seed.nodes.insert(top);
            seed.trace_set = traces_with_shift(index_, top).objects;
            drds_.push_back(std::move(seed));
            expand(0, top, drds_[0].trace_set, 0, {top});
            for (auto& d : drds_)
                if (d.is_decision(top)) all.push_back(std::move(d));
        }
        return deduplicate(std::move(all));
    }

    static std::vector<DiscoveredDrd> deduplicate(std::vector<DiscoveredDrd> drds)
    {
        std::vector<DiscoveredDrd> out;
        std::set<std::pair<std::set<Ataots>, std::set<std::pair<Ataots, Ataots>>>> seen;
        for (auto& d : drds)
            if (seen.insert({d.nodes, d.edge_set()}).second) out.push_back(std::move(d));
        return out;
    }

    /// Candidate inputs of d over the output objects T, sorted.
    std::vector<InputCandidate> input_candidates(const Ataots& d, const ObjectSet& trace_set,
                                                 const std::vector<Ataots>& ancestors = {})
    {
        std::vector<InputCandidate> out;
        auto inputs = candidates_.inputs.find(d.activity);
        if (inputs == candidates_.inputs.end()) return out;
        const double bound = config_.min_traceprop * static_cast<double>(index_.type_count(d.object_type));
        for (const auto& [at2, ot2] : inputs->second)
            for (const auto& [a2, outs] : candidates_.outputs) {
                if (!outs.count({at2, ot2})) continue;
                std::size_t most = 0;
                for (const auto& [o, n] : index_.shifted_objects(at2, a2, ot2)) most = std::max(most, n);
                for (std::size_t n2 = 1; n2 <= std::min(most, config_.max_shift); ++n2) {
                    Ataots d2{at2, a2, ot2, n2};
                    if (d2 == d || std::find(ancestors.begin(), ancestors.end(), d2) != ancestors.end()) continue;
                    InputCandidate c{d2, {}, 0, {}};
                    for (const auto& o : trace_set) {
                        const Shift* s = index_.nth(d, o);
                        if (!s) continue;
                        for (const auto& o2 : related(o, ot2)) {
                            const Shift* s2 = index_.nth(d2, o2);
                            if (!s2 || !(s2->event < s->event)) continue;
                            c.pairs.push_back({o, o2, s2->value, s->value});
                            c.traces.insert(o);
                        }
                    }
                    if (static_cast<double>(c.traces.size()) <= bound || c.pairs.size() < 2) continue;
                    std::vector<AttributeValue> x, y;
                    for (const auto& p : c.pairs) {
                        x.push_back(p.input);
                        y.push_back(p.output);
                    }
                    c.correlation = correlate(x, y);
                    if (c.correlation > config_.min_corr) out.push_back(std::move(c));
                }
            }
        sort_candidates(out);
        return out;
    }

    /// Training rows: one per output object and combination of related input
    /// objects whose shift precedes the output shift.
    ml::EncodedDataset training_data(const Ataots& output, const std::vector<Ataots>& inputs, const ObjectSet& traces)
    {
        auto names = feature_names(inputs);
        std::vector<ml::RawRow> raw;
        for (const auto& o : traces) {
            const Shift* s = index_.nth(output, o);
            if (!s) continue;
            std::vector<std::vector<AttributeValue>> options;
            for (const auto& in : inputs) {
                std::vector<AttributeValue> values;
                for (const auto& o2 : related(o, in.object_type)) {
                    const Shift* s2 = index_.nth(in, o2);
                    if (s2 && s2->event < s->event) values.push_back(s2->value);
                }
                options.push_back(std::move(values));
            }
            if (std::any_of(options.begin(), options.end(), [](const auto& v) { return v.empty(); })) continue;
            std::vector<std::size_t> pos(options.size(), 0);
            for (std::size_t emitted = 0; emitted < kMaxRowsPerObject; ++emitted) {
                ml::RawRow row;
                for (std::size_t f = 0; f < options.size(); ++f) row.emplace(names[f], options[f][pos[f]]);
                row.emplace(kTarget, s->value);
                raw.push_back(std::move(row));
                std::size_t f = 0;
                while (f < pos.size() && ++pos[f] == options[f].size()) pos[f++] = 0;
                if (f == pos.size()) break;
            }
        }
        if (raw.size() < 2) throw Error(ErrorCode::TooFewSamples, "fewer than 2 training rows for " + output.label());
        auto ds = ml::encode_features(raw, kTarget);
        ds.encodings.target.name = output.label();
        return ds;
    }

    /// Cross-validated forest plus a full-data tree; memoized per
    /// (output, inputs, traces).
    std::shared_ptr<const PredictiveModel> build_predictive_model(const Ataots& output, std::vector<Ataots> inputs,
                                                                  const ObjectSet& traces)
    {
        std::sort(inputs.begin(), inputs.end());
        auto key = std::make_tuple(output, inputs, traces);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        std::shared_ptr<PredictiveModel> model;
        ModelEvaluation eval{output, inputs, traces.size(), 0, false};
        try {
            if (inputs.empty()) throw Error(ErrorCode::TooFewSamples, "model without inputs");
            auto ds = training_data(output, inputs, traces);
            auto learner = config_.learner;
            learner.seed = model_seed(output, inputs, traces);
            const std::size_t folds = std::min(learner.cv_folds, ds.size());
            model = std::make_shared<PredictiveModel>();
            model->output = output;
            model->inputs = inputs;
            model->traces = traces;
            model->rows = ds.size();
            model->accuracy = ml::evaluate_accuracy(ds, learner, folds);
            auto tree_cfg = learner;
            tree_cfg.max_features = 0;
            model->tree = ml::train_decision_tree(ds, tree_cfg);
            model->encodings = ds.encodings;
            eval.accuracy = model->accuracy;
            eval.accepted = model->accuracy > config_.min_support;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TooFewSamples) throw;
            model.reset();
        }
        evaluations_.push_back(eval);
        return memo_[key] = model;
    }

    const ObjectSet& related(const ObjectId& o, const std::string& type2)
    {
        auto key = std::make_pair(o, type2);
        auto it = related_.find(key);
        if (it == related_.end()) it = related_.emplace(key, related_objects(index_, log_, o, type2)).first;
        return it->second;
    }

    /// Feature name of each input: its label, or its full id when labels collide.
    static std::vector<std::string> feature_names(const std::vector<Ataots>& inputs)
    {
        std::vector<std::string> names;
        for (const auto& in : inputs) {
            auto clash = std::count_if(inputs.begin(), inputs.end(), [&](const Ataots& x) { return x.label() == in.label(); });
            names.push_back(clash > 1 ? in.id() : in.label());
        }
        return names;
    }

private:
    static constexpr std::size_t kMaxRowsPerObject = 64;

    static MiningConfig validated(MiningConfig c)
    {
        c.validate();
        return c;
    }
    static constexpr const char* kTarget = "\x01target";

    std::uint64_t model_seed(const Ataots& output, const std::vector<Ataots>& inputs, const ObjectSet& traces) const
    {
        Fnv1a h;
        h.add(config_.rng_seed).add(output.id());
        for (const auto& i : inputs) h.add(i.id());
        for (const auto& o : traces) h.add(o);
        return h.value();
    }

    void add_inputs(DiscoveredDrd& drd, const Ataots& d, const InputModel& m,
                    const std::map<Ataots, const InputCandidate*>& by_node, bool reestimate,
                    std::vector<Ataots>& accepted)
    {
        for (const auto& in : m.inputs) {
            const auto* c = by_node.at(in);
            double corr = reestimate ? c->correlation_on(m.traces) : c->correlation;
            if (reestimate && !(corr > config_.min_corr)) continue;
            if (drd.reaches(d, in)) continue; // would close a cycle
            drd.nodes.insert(in);
            drd.edges[{in, d}] = DrdEdge{in, d, set_intersection(c->traces, m.traces), corr};
            accepted.push_back(in);
        }
    }

    void expand(std::size_t drd_index, const Ataots& d, const ObjectSet& trace_set, std::size_t depth,
                std::vector<Ataots> ancestors)
    {
        if (depth > kMaxDepth)
            throw Error(ErrorCode::RecursionDepthExceeded, "input search deeper than " + std::to_string(kMaxDepth), d.id());
        drds_[drd_index].expanded.insert(d);
        auto candidates = input_candidates(d, trace_set, ancestors);
        std::map<Ataots, const InputCandidate*> by_node;
        for (const auto& c : candidates) by_node[c.node] = &c;
        const double bound = config_.min_traceprop * static_cast<double>(index_.type_count(d.object_type));

        for (const auto& m : find_input_models(candidates, bound, config_.min_dev)) {
            auto model = build_predictive_model(d, m.inputs, m.traces);
            if (!model || !(model->accuracy > config_.min_support)) continue;
            std::size_t target = drd_index;
            const bool same = m.traces == trace_set;
            if (!same) {
                // Another trace cluster: fork the DRD, restricted to the model's traces.
                DiscoveredDrd fork = drds_[drd_index];
                fork.trace_set = m.traces;
                fork.expanded.clear();
                drds_.push_back(std::move(fork));
                target = drds_.size() - 1;
            }
            std::vector<Ataots> accepted;
            add_inputs(drds_[target], d, m, by_node, !same, accepted);
            if (accepted.empty()) {
                if (!same) drds_.pop_back();
                continue;
            }
            if (!drds_[target].models.count(d)) drds_[target].models[d] = model;
            for (const auto& in : accepted) {
                if (drds_[target].expanded.count(in)) continue;
                auto next = ancestors;
                next.push_back(in);
                expand(target, in, traces_with_shift(index_, in).objects, depth + 1, std::move(next));
            }
        }
    }

    const DocelLog& log_;
    MiningConfig config_;
    ShiftIndex index_;
    CandidateVariables candidates_;
    std::vector<DiscoveredDrd> drds_;
    std::map<std::tuple<Ataots, std::vector<Ataots>, ObjectSet>, std::shared_ptr<const PredictiveModel>> memo_;
    std::map<std::pair<ObjectId, std::string>, ObjectSet> related_;
    std::vector<ModelEvaluation> evaluations_;
};

/// Discovers decision models from a validated log.
inline std::vector<DiscoveredDrd> mine_dmn_models(const DocelLog& log, const MiningConfig& config = {})
{
    DecisionMiner miner(log, config);
    return miner.run();
}

inline std::vector<DiscoveredDrd> deduplicate_drds(std::vector<DiscoveredDrd> drds)
{
    return DecisionMiner::deduplicate(std::move(drds));
}

} // namespace iodda
