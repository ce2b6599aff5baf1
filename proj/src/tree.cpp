#include <algorithm>
#include <cmath>
#include <numeric>

#include "dti/classifiers.hpp"
#include "dti/rng.hpp"

namespace dti {

namespace {

double impurity(const std::vector<std::size_t>& counts, SplitCriterion crit) {
    return crit == SplitCriterion::entropy ? entropy_from_counts(counts)
                                           : gini_from_counts(counts);
}

struct Builder {
    const LabeledTable& t;
    SplitCriterion crit;

    std::vector<std::size_t> count_classes(const std::vector<std::size_t>& idx) const {
        std::vector<std::size_t> counts(t.n_classes(), 0);
        for (std::size_t i : idx) counts[t.labels[i]]++;
        return counts;
    }

    static std::vector<double> normalize(const std::vector<std::size_t>& counts) {
        double n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
        std::vector<double> f(counts.size(), 0.0);
        if (n > 0)
            for (std::size_t c = 0; c < counts.size(); ++c) f[c] = counts[c] / n;
        return f;
    }

    std::unique_ptr<TreeNode> build(const std::vector<std::size_t>& idx,
                                    std::vector<bool> cat_available) const {
        auto node = std::make_unique<TreeNode>();
        auto counts = count_classes(idx);
        node->class_freq = normalize(counts);
        node->majority = argmax_class(node->class_freq);

        std::size_t nonzero = 0;
        for (std::size_t c : counts)
            if (c) ++nonzero;
        if (nonzero <= 1) return node;  // pure

        double parent = impurity(counts, crit);
        double best_gain = 1e-12;
        int best_feature = -1;
        bool best_numeric = false;
        double best_threshold = 0.0;

        for (std::size_t f = 0; f < t.n_features(); ++f) {
            if (t.feature_kinds[f] == FeatureKind::categorical) {
                if (!cat_available[f]) continue;
                std::size_t n_levels = t.levels[f].size();
                std::vector<std::vector<std::size_t>> child(
                    n_levels, std::vector<std::size_t>(t.n_classes(), 0));
                std::vector<std::size_t> child_n(n_levels, 0);
                for (std::size_t i : idx) {
                    child[t.rows[i][f].cat][t.labels[i]]++;
                    child_n[t.rows[i][f].cat]++;
                }
                double weighted = 0.0;
                std::size_t used = 0;
                for (std::size_t v = 0; v < n_levels; ++v) {
                    if (child_n[v] == 0) continue;
                    ++used;
                    weighted +=
                        static_cast<double>(child_n[v]) / idx.size() * impurity(child[v], crit);
                }
                if (used < 2) continue;
                double gain = parent - weighted;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = static_cast<int>(f);
                    best_numeric = false;
                }
            } else {
                // binary threshold at midpoints between sorted distinct values
                std::vector<std::size_t> order(idx);
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    return t.rows[a][f].num < t.rows[b][f].num;
                });
                std::vector<std::size_t> left(t.n_classes(), 0);
                auto right = count_classes(idx);
                for (std::size_t r = 0; r + 1 < order.size(); ++r) {
                    int cls = t.labels[order[r]];
                    left[cls]++;
                    right[cls]--;
                    double v = t.rows[order[r]][f].num;
                    double vn = t.rows[order[r + 1]][f].num;
                    if (v == vn) continue;
                    double nl = r + 1, nr = order.size() - r - 1;
                    double weighted = (nl * impurity(left, crit) + nr * impurity(right, crit)) /
                                      order.size();
                    double gain = parent - weighted;
                    double thr = 0.5 * (v + vn);
                    if (gain > best_gain ||
                        (gain == best_gain && best_feature == static_cast<int>(f) &&
                         best_numeric && thr < best_threshold)) {
                        best_gain = gain;
                        best_feature = static_cast<int>(f);
                        best_numeric = true;
                        best_threshold = thr;
                    }
                }
            }
        }

        if (best_feature < 0) return node;  // nothing gains

        node->leaf = false;
        node->feature = best_feature;
        node->numeric_split = best_numeric;
        node->threshold = best_threshold;

        if (best_numeric) {
            std::vector<std::size_t> l, r;
            for (std::size_t i : idx)
                (t.rows[i][best_feature].num <= best_threshold ? l : r).push_back(i);
            node->children.push_back(build(l, cat_available));
            node->children.push_back(build(r, cat_available));
        } else {
            cat_available[best_feature] = false;  // a categorical attribute is consumed
            std::size_t n_levels = t.levels[best_feature].size();
            std::vector<std::vector<std::size_t>> parts(n_levels);
            for (std::size_t i : idx) parts[t.rows[i][best_feature].cat].push_back(i);
            for (std::size_t v = 0; v < n_levels; ++v) {
                if (parts[v].empty()) {
                    // empty branch inherits the parent distribution
                    auto leaf = std::make_unique<TreeNode>();
                    leaf->class_freq = node->class_freq;
                    leaf->majority = node->majority;
                    node->children.push_back(std::move(leaf));
                } else {
                    node->children.push_back(build(parts[v], cat_available));
                }
            }
        }
        return node;
    }
};

const TreeNode* descend(const TreeNode* node, const Row& row) {
    while (!node->leaf) {
        if (node->numeric_split) {
            node = row[node->feature].num <= node->threshold ? node->children[0].get()
                                                             : node->children[1].get();
        } else {
            int lv = row[node->feature].cat;
            if (lv < 0 || lv >= static_cast<int>(node->children.size())) return node;
            node = node->children[lv].get();
        }
    }
    return node;
}

int tree_predict_label(const TreeNode* root, const Row& row) {
    return descend(root, row)->majority;
}

std::size_t correct_on(const TreeNode* root, const LabeledTable& t,
                       const std::vector<std::size_t>& idx) {
    std::size_t ok = 0;
    for (std::size_t i : idx)
        if (tree_predict_label(root, t.rows[i]) == t.labels[i]) ++ok;
    return ok;
}

// Reduced-error post-pruning: collapse a subtree whenever the collapsed tree
// is no worse on the holdout.
void prune_node(TreeNode* node, TreeNode* root, const LabeledTable& t,
                const std::vector<std::size_t>& holdout) {
    if (node->leaf) return;
    for (auto& child : node->children) prune_node(child.get(), root, t, holdout);
    std::size_t before = correct_on(root, t, holdout);
    node->leaf = true;
    std::size_t after = correct_on(root, t, holdout);
    if (after >= before) {
        node->children.clear();
        node->feature = -1;
    } else {
        node->leaf = false;
    }
}

}  // namespace

std::unique_ptr<DecisionTreeModel> fit_tree(const ClassifierConfig& config,
                                            const LabeledTable& data) {
    if (data.n_rows() == 0) throw InputError("fit_tree: empty training set");
    auto model = std::unique_ptr<DecisionTreeModel>(new DecisionTreeModel());
    model->kinds_ = data.feature_kinds;
    model->feature_names_ = data.feature_names;
    model->levels_ = data.levels;
    model->class_names_ = data.class_names;

    std::vector<std::size_t> all(data.n_rows());
    std::iota(all.begin(), all.end(), 0);

    std::vector<std::size_t> grow = all, holdout;
    if (config.pruning == Pruning::reduced_error && data.n_rows() >= 5) {
        Rng rng(config.seed);
        rng.shuffle(all);
        std::size_t n_hold = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(config.pruning_holdout * data.n_rows())));
        n_hold = std::min(n_hold, data.n_rows() - 1);
        holdout.assign(all.begin(), all.begin() + n_hold);
        grow.assign(all.begin() + n_hold, all.end());
        std::sort(grow.begin(), grow.end());
        std::sort(holdout.begin(), holdout.end());
    }

    Builder b{data, config.split_criterion};
    std::vector<bool> cat_avail(data.n_features(), true);
    model->root_ = b.build(grow, cat_avail);
    if (!holdout.empty()) prune_node(model->root_.get(), model->root_.get(), data, holdout);
    return model;
}

Prediction DecisionTreeModel::predict(const Row& row) const {
    if (row.size() != kinds_.size()) throw InputError("decision_tree: schema mismatch");
    const TreeNode* node = descend(root_.get(), row);
    Prediction p;
    p.scores = node->class_freq;
    p.label = argmax_class(p.scores);
    return p;
}

std::string DecisionTreeModel::root_attribute() const {
    if (root_->leaf) return "";
    return feature_names_[root_->feature];
}

}  // namespace dti
