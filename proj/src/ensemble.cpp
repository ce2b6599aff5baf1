#include <algorithm>
#include <cmath>
#include <numeric>

#include "dti/classifiers.hpp"
#include "dti/rng.hpp"

namespace dti {

namespace {

// Projects prediction rows onto the feature subset a forest tree was grown on.
class FeatureSubsetModel final : public Classifier {
public:
    std::vector<std::size_t> features;
    std::unique_ptr<Classifier> inner;

    Prediction predict(const Row& row) const override {
        Row sub(features.size());
        for (std::size_t k = 0; k < features.size(); ++k) {
            if (features[k] >= row.size()) throw InputError("ensemble: schema mismatch");
            sub[k] = row[features[k]];
        }
        return inner->predict(sub);
    }

    Algorithm algorithm() const override { return inner->algorithm(); }
};

ClassifierConfig base_config(const ClassifierConfig& cfg, std::uint64_t member_seed) {
    ClassifierConfig base = cfg;
    base.algorithm = cfg.base_algorithm;
    base.seed = member_seed;
    if (base.algorithm == Algorithm::bagging || base.algorithm == Algorithm::boosting ||
        base.algorithm == Algorithm::random_forest)
        throw ConfigError("ensemble base algorithm cannot itself be an ensemble");
    return base;
}

std::vector<std::size_t> bootstrap_indices(std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = rng.below(n);
    return idx;
}

// Weighted sample with replacement via the cumulative distribution.
std::vector<std::size_t> weighted_sample(const std::vector<double>& w, Rng& rng) {
    std::size_t n = w.size();
    std::vector<double> cum(n);
    std::partial_sum(w.begin(), w.end(), cum.begin());
    double total = cum.back();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.uniform() * total;
        idx[i] = std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
        if (idx[i] >= n) idx[i] = n - 1;
    }
    return idx;
}

}  // namespace

std::unique_ptr<EnsembleModel> EnsembleModel::voting(
    std::vector<std::unique_ptr<Classifier>> members, std::vector<double> weights,
    std::size_t n_classes) {
    if (members.size() != weights.size())
        throw InputError("voting: member/weight count mismatch");
    auto model = std::unique_ptr<EnsembleModel>(new EnsembleModel());
    model->kind_ = Algorithm::bagging;
    model->members_ = std::move(members);
    model->weights_ = std::move(weights);
    model->n_classes_ = n_classes;
    model->fallback_scores_.assign(n_classes, n_classes ? 1.0 / n_classes : 0.0);
    return model;
}

std::unique_ptr<EnsembleModel> fit_ensemble(const ClassifierConfig& config,
                                            const LabeledTable& data) {
    config.validate();
    if (data.n_rows() == 0) throw InputError("fit_ensemble: empty training set");

    auto model = std::unique_ptr<EnsembleModel>(new EnsembleModel());
    model->kind_ = config.algorithm;
    model->n_classes_ = data.n_classes();
    auto counts = data.class_counts();
    model->fallback_scores_.resize(counts.size());
    for (std::size_t c = 0; c < counts.size(); ++c)
        model->fallback_scores_[c] = static_cast<double>(counts[c]) / data.n_rows();

    const std::size_t n = data.n_rows();
    const int m = config.ensemble_size;

    if (config.algorithm == Algorithm::bagging || config.algorithm == Algorithm::random_forest) {
        std::size_t subset = config.feature_subset_size > 0
                                 ? std::min<std::size_t>(config.feature_subset_size,
                                                         data.n_features())
                                 : static_cast<std::size_t>(
                                       std::ceil(std::sqrt(double(data.n_features()))));
        for (int r = 0; r < m; ++r) {
            Rng rng = Rng::stream(config.seed, r);
            LabeledTable boot = table_with_rows(data, bootstrap_indices(n, rng));
            if (config.algorithm == Algorithm::random_forest && subset < data.n_features()) {
                std::vector<std::size_t> feats(data.n_features());
                std::iota(feats.begin(), feats.end(), 0);
                rng.shuffle(feats);
                feats.resize(subset);
                std::sort(feats.begin(), feats.end());
                auto wrapped = std::make_unique<FeatureSubsetModel>();
                wrapped->features = feats;
                wrapped->inner = fit(base_config(config, rng.next()),
                                     table_with_features(boot, feats));
                model->members_.push_back(std::move(wrapped));
            } else {
                model->members_.push_back(fit(base_config(config, rng.next()), boot));
            }
            model->weights_.push_back(1.0);
        }
        return model;
    }

    // AdaBoost.M1 with weighted resampling; model weight ln((1-err)/err).
    std::vector<double> w(n, 1.0 / n);
    for (int r = 0; r < m; ++r) {
        Rng rng = Rng::stream(config.seed, r);
        LabeledTable boot = table_with_rows(data, weighted_sample(w, rng));
        auto member = fit(base_config(config, rng.next()), boot);

        double err = 0.0;
        std::vector<bool> miss(n);
        for (std::size_t i = 0; i < n; ++i) {
            miss[i] = member->predict(data.rows[i]).label != data.labels[i];
            if (miss[i]) err += w[i];
        }

        if (err >= 0.5) {
            if (r == 0) {
                // a base learner no better than chance: keep it so predict
                // still works, but flag the run
                model->members_.push_back(std::move(member));
                model->weights_.push_back(1.0);
                model->warnings_.push_back(
                    "boosting: base error >= 0.5 at round 1, stopped with partial ensemble");
            } else {
                model->warnings_.push_back("boosting: stopped at round " + std::to_string(r + 1) +
                                           " (weighted error >= 0.5)");
            }
            break;
        }

        double floored = std::max(err, 1e-12);
        double alpha = std::log((1.0 - floored) / floored);
        model->members_.push_back(std::move(member));
        model->weights_.push_back(alpha);
        model->round_errors_.push_back(err);

        if (err == 0.0) break;  // perfect round, nothing left to reweight

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (miss[i]) w[i] *= std::exp(alpha);
            total += w[i];
        }
        for (double& wi : w) wi /= total;
    }
    return model;
}

Prediction EnsembleModel::predict(const Row& row) const {
    Prediction p;
    p.scores.assign(n_classes_, 0.0);
    if (members_.empty()) {
        p.scores = fallback_scores_;
        p.label = argmax_class(p.scores);
        return p;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        Prediction base = members_[i]->predict(row);
        p.scores[base.label] += weights_[i];
        total += weights_[i];
    }
    if (total > 0)
        for (double& s : p.scores) s /= total;
    p.label = argmax_class(p.scores);
    return p;
}

}  // namespace dti
