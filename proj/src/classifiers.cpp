#include "dti/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dti/simd.hpp"

namespace dti {

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "knn") return Algorithm::knn;
    if (s == "naive_bayes") return Algorithm::naive_bayes;
    if (s == "decision_tree") return Algorithm::decision_tree;
    if (s == "logistic_regression") return Algorithm::logistic_regression;
    if (s == "rls") return Algorithm::rls;
    if (s == "svm") return Algorithm::svm;
    if (s == "bagging") return Algorithm::bagging;
    if (s == "boosting") return Algorithm::boosting;
    if (s == "random_forest") return Algorithm::random_forest;
    throw ConfigError("unknown algorithm '" + s + "'");
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::knn: return "knn";
        case Algorithm::naive_bayes: return "naive_bayes";
        case Algorithm::decision_tree: return "decision_tree";
        case Algorithm::logistic_regression: return "logistic_regression";
        case Algorithm::rls: return "rls";
        case Algorithm::svm: return "svm";
        case Algorithm::bagging: return "bagging";
        case Algorithm::boosting: return "boosting";
        case Algorithm::random_forest: return "random_forest";
    }
    return "?";
}

void ClassifierConfig::validate() const {
    if (k < 1) throw ConfigError("knn: k must be >= 1");
    if (!(delta > 0.0)) throw ConfigError("rls: delta must be > 0");
    if (!(svm_c > 0.0)) throw ConfigError("svm: C must be > 0");
    if (ensemble_size < 1) throw ConfigError("ensemble_size must be >= 1");
    if (feature_subset_size < 0) throw ConfigError("feature_subset_size must be >= 0");
    if (!(pruning_holdout > 0.0 && pruning_holdout < 1.0) && pruning == Pruning::reduced_error)
        throw ConfigError("pruning holdout fraction must be in (0,1)");
    if (!(logistic_ridge >= 0.0)) throw ConfigError("logistic ridge must be >= 0");
    kernel.validate();
}

int argmax_class(const std::vector<double>& scores) {
    int best = 0;
    for (std::size_t c = 1; c < scores.size(); ++c)
        if (scores[c] > scores[best]) best = static_cast<int>(c);
    return best;
}

DenseMatrix numeric_features(const LabeledTable& data) {
    for (std::size_t f = 0; f < data.n_features(); ++f)
        if (data.feature_kinds[f] != FeatureKind::numeric)
            throw ConfigError("feature '" + data.feature_names[f] +
                              "' is categorical; this algorithm needs numeric features");
    DenseMatrix x(data.n_rows(), data.n_features());
    for (std::size_t i = 0; i < data.n_rows(); ++i)
        for (std::size_t f = 0; f < data.n_features(); ++f) x(i, f) = data.rows[i][f].num;
    return x;
}

LabeledTable table_with_rows(const LabeledTable& t, const std::vector<std::size_t>& row_idx) {
    LabeledTable out;
    out.feature_names = t.feature_names;
    out.feature_kinds = t.feature_kinds;
    out.levels = t.levels;
    out.class_names = t.class_names;
    out.rows.reserve(row_idx.size());
    out.labels.reserve(row_idx.size());
    for (std::size_t i : row_idx) {
        out.rows.push_back(t.rows[i]);
        out.labels.push_back(t.labels[i]);
    }
    return out;
}

LabeledTable table_with_features(const LabeledTable& t, const std::vector<std::size_t>& feat_idx) {
    LabeledTable out;
    out.class_names = t.class_names;
    out.labels = t.labels;
    for (std::size_t f : feat_idx) {
        out.feature_names.push_back(t.feature_names[f]);
        out.feature_kinds.push_back(t.feature_kinds[f]);
        out.levels.push_back(t.levels[f]);
    }
    out.rows.reserve(t.n_rows());
    for (const Row& r : t.rows) {
        Row nr(feat_idx.size());
        for (std::size_t k = 0; k < feat_idx.size(); ++k) nr[k] = r[feat_idx[k]];
        out.rows.push_back(std::move(nr));
    }
    return out;
}

// ---- impurity ----------------------------------------------------------------

double entropy_from_counts(const std::vector<std::size_t>& counts) {
    std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    if (n == 0) throw InputError("entropy: empty label set");
    double e = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / n;
        e -= p * std::log2(p);
    }
    return e;
}

double entropy(const std::vector<int>& labels) {
    if (labels.empty()) throw InputError("entropy: empty label set");
    int max_label = *std::max_element(labels.begin(), labels.end());
    std::vector<std::size_t> counts(max_label + 1, 0);
    for (int l : labels) {
        if (l < 0) throw InputError("entropy: negative class id");
        counts[l]++;
    }
    return entropy_from_counts(counts);
}

double gini_from_counts(const std::vector<std::size_t>& counts) {
    std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    if (n == 0) throw InputError("gini: empty label set");
    double g = 1.0;
    for (std::size_t c : counts) {
        double p = static_cast<double>(c) / n;
        g -= p * p;
    }
    return g;
}

double information_gain(const LabeledTable& data, std::size_t attribute) {
    if (attribute >= data.n_features()) throw InputError("information_gain: no such attribute");
    if (data.feature_kinds[attribute] != FeatureKind::categorical)
        throw ConfigError("information_gain: attribute '" + data.feature_names[attribute] +
                          "' is numeric; discretize it first");
    if (data.n_rows() == 0) throw InputError("information_gain: empty table");

    double parent = entropy_from_counts(data.class_counts());
    std::size_t n_levels = data.levels[attribute].size();
    std::vector<std::vector<std::size_t>> child(n_levels + 1,
                                                std::vector<std::size_t>(data.n_classes(), 0));
    std::vector<std::size_t> child_n(n_levels + 1, 0);
    for (std::size_t i = 0; i < data.n_rows(); ++i) {
        int lv = data.rows[i][attribute].cat;
        std::size_t slot = lv < 0 ? n_levels : static_cast<std::size_t>(lv);
        child[slot][data.labels[i]]++;
        child_n[slot]++;
    }
    double weighted = 0.0;
    for (std::size_t v = 0; v <= n_levels; ++v) {
        if (child_n[v] == 0) continue;
        weighted += static_cast<double>(child_n[v]) / data.n_rows() * entropy_from_counts(child[v]);
    }
    return parent - weighted;
}

// ---- k nearest neighbors -------------------------------------------------------

namespace {

class KnnModel final : public Classifier {
public:
    LabeledTable train;
    int k = 3;
    bool weighted = false;

    Prediction predict(const Row& row) const override {
        if (row.size() != train.n_features()) throw InputError("knn: schema mismatch");
        std::size_t n = train.n_rows();
        std::vector<std::pair<double, std::size_t>> dist(n);
        for (std::size_t i = 0; i < n; ++i) dist[i] = {distance(train.rows[i], row), i};
        std::size_t kk = std::min<std::size_t>(k, n);
        std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
        std::vector<double> votes(train.n_classes(), 0.0);
        for (std::size_t r = 0; r < kk; ++r) {
            double w = weighted ? 1.0 / (dist[r].first + 1e-12) : 1.0;
            votes[train.labels[dist[r].second]] += w;
        }
        double total = std::accumulate(votes.begin(), votes.end(), 0.0);
        if (total > 0)
            for (double& v : votes) v /= total;
        Prediction p;
        p.scores = std::move(votes);
        p.label = argmax_class(p.scores);
        return p;
    }

    Algorithm algorithm() const override { return Algorithm::knn; }

private:
    double distance(const Row& a, const Row& b) const {
        double s = 0.0;
        for (std::size_t f = 0; f < a.size(); ++f) {
            if (train.feature_kinds[f] == FeatureKind::numeric) {
                double d = a[f].num - b[f].num;
                s += d * d;
            } else {
                if (a[f].cat != b[f].cat || b[f].cat < 0) s += 1.0;
            }
        }
        return std::sqrt(s);
    }
};

}  // namespace

// ---- naive Bayes ----------------------------------------------------------------

std::unique_ptr<NaiveBayesModel> fit_naive_bayes(const ClassifierConfig& config,
                                                 const LabeledTable& data) {
    auto m = std::make_unique<NaiveBayesModel>();
    m->laplace = config.laplace_smoothing;
    m->kinds = data.feature_kinds;
    m->n_classes = data.n_classes();
    auto counts = data.class_counts();
    m->class_totals.assign(counts.begin(), counts.end());
    m->log_priors.resize(m->n_classes);
    for (std::size_t c = 0; c < m->n_classes; ++c)
        m->log_priors[c] = std::log(static_cast<double>(counts[c]) / data.n_rows());

    m->cat_counts.resize(data.n_features());
    m->numeric_stats.resize(data.n_features());
    for (std::size_t f = 0; f < data.n_features(); ++f) {
        if (data.feature_kinds[f] == FeatureKind::categorical) {
            m->cat_counts[f].assign(m->n_classes,
                                    std::vector<double>(data.levels[f].size(), 0.0));
            for (std::size_t i = 0; i < data.n_rows(); ++i)
                m->cat_counts[f][data.labels[i]][data.rows[i][f].cat] += 1.0;
        } else {
            m->numeric_stats[f].assign(m->n_classes, {0.0, 0.0});
            std::vector<double> sum(m->n_classes, 0.0), sq(m->n_classes, 0.0);
            for (std::size_t i = 0; i < data.n_rows(); ++i) {
                sum[data.labels[i]] += data.rows[i][f].num;
                sq[data.labels[i]] += data.rows[i][f].num * data.rows[i][f].num;
            }
            for (std::size_t c = 0; c < m->n_classes; ++c) {
                double n = m->class_totals[c];
                double mean = n > 0 ? sum[c] / n : 0.0;
                double var = n > 0 ? std::max(sq[c] / n - mean * mean, 0.0) : 0.0;
                m->numeric_stats[f][c] = {mean, std::max(std::sqrt(var), 1e-9)};
            }
        }
    }
    return m;
}

Prediction NaiveBayesModel::predict(const Row& row) const {
    if (row.size() != kinds.size()) throw InputError("naive_bayes: schema mismatch");
    std::vector<double> logp(n_classes);
    for (std::size_t c = 0; c < n_classes; ++c) {
        double lp = log_priors[c];
        for (std::size_t f = 0; f < kinds.size(); ++f) {
            if (kinds[f] == FeatureKind::categorical) {
                double n_levels = static_cast<double>(cat_counts[f][c].size());
                double count =
                    row[f].cat >= 0 && row[f].cat < static_cast<int>(cat_counts[f][c].size())
                        ? cat_counts[f][c][row[f].cat]
                        : 0.0;
                double p = laplace ? (count + 1.0) / (class_totals[c] + n_levels)
                                   : count / class_totals[c];
                lp += p > 0 ? std::log(p) : -std::numeric_limits<double>::infinity();
            } else {
                auto [mean, sd] = numeric_stats[f][c];
                double z = (row[f].num - mean) / sd;
                lp += -0.5 * z * z - std::log(sd) - 0.5 * std::log(2.0 * M_PI);
            }
        }
        logp[c] = lp;
    }
    double mx = *std::max_element(logp.begin(), logp.end());
    Prediction p;
    p.scores.resize(n_classes);
    double total = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
        double e = std::isfinite(mx) ? std::exp(logp[c] - mx) : 1.0;
        p.scores[c] = e;
        total += e;
    }
    for (double& s : p.scores) s /= total;
    p.label = argmax_class(p.scores);
    return p;
}

// ---- regularized least squares ---------------------------------------------------

std::vector<double> rls_fit(const DenseMatrix& k, const std::vector<double>& y, double delta) {
    return regularized_solve(k, y, delta);
}

double rls_predict(const std::vector<double>& c, const std::vector<double>& k_hat) {
    if (c.size() != k_hat.size()) throw InputError("rls_predict: dimension mismatch");
    return simd::dot(c.data(), k_hat.data(), c.size());
}

namespace {

// Attempts a cheap PSD probe before paying for a full eigen repair.
DenseMatrix ensure_psd(const DenseMatrix& k) {
    try {
        DenseMatrix probe = k;
        for (std::size_t i = 0; i < probe.rows(); ++i) probe(i, i) += 1e-10;
        cholesky_factor(probe);
        return k;
    } catch (const NumericError&) {
        return psd_repair(k);
    }
}

class RlsModel final : public Classifier {
public:
    DenseMatrix train_x;
    KernelSpec kernel;
    std::vector<double> coef;
    std::size_t n_classes = 2;
    std::vector<FeatureKind> kinds;

    Prediction predict(const Row& row) const override {
        if (row.size() != kinds.size()) throw InputError("rls: schema mismatch");
        std::vector<double> x(row.size());
        for (std::size_t f = 0; f < row.size(); ++f) x[f] = row[f].num;
        std::vector<double> k_hat(train_x.rows());
        for (std::size_t i = 0; i < train_x.rows(); ++i)
            k_hat[i] = kernel_eval(kernel, train_x.row(i), x.data(), x.size());
        double s = std::clamp(rls_predict(coef, k_hat), 0.0, 1.0);
        Prediction p;
        p.scores = {1.0 - s, s};
        p.label = argmax_class(p.scores);
        return p;
    }

    Algorithm algorithm() const override { return Algorithm::rls; }
};

}  // namespace

// ---- support vector machine --------------------------------------------------------

SvmDual svm_fit(const DenseMatrix& gram, const std::vector<int>& labels, double c,
                double kkt_tol, int max_passes) {
    const std::size_t n = labels.size();
    if (gram.rows() != n || gram.cols() != n) throw InputError("svm_fit: gram size mismatch");
    if (!(c > 0.0)) throw ConfigError("svm_fit: C must be > 0");
    bool has_pos = false, has_neg = false;
    for (int y : labels) {
        if (y == 1) has_pos = true;
        else if (y == -1) has_neg = true;
        else throw InputError("svm_fit: labels must be -1 or +1");
    }
    if (!has_pos || !has_neg) throw InputError("svm_fit: both classes must be present");

    SvmDual d;
    d.alpha.assign(n, 0.0);
    d.bias = 0.0;

    auto decision = [&](std::size_t i) {
        double f = d.bias;
        for (std::size_t j = 0; j < n; ++j)
            if (d.alpha[j] != 0.0) f += d.alpha[j] * labels[j] * gram(j, i);
        return f;
    };

    auto try_pair = [&](std::size_t i, std::size_t j, double ei) -> bool {
        if (i == j) return false;
        double ej = decision(j) - labels[j];
        double ai_old = d.alpha[i], aj_old = d.alpha[j];
        double lo, hi;
        if (labels[i] != labels[j]) {
            lo = std::max(0.0, aj_old - ai_old);
            hi = std::min(c, c + aj_old - ai_old);
        } else {
            lo = std::max(0.0, ai_old + aj_old - c);
            hi = std::min(c, ai_old + aj_old);
        }
        if (lo >= hi) return false;
        double eta = 2.0 * gram(i, j) - gram(i, i) - gram(j, j);
        double aj;
        if (eta < 0.0) {
            aj = aj_old - labels[j] * (ei - ej) / eta;
            aj = std::clamp(aj, lo, hi);
        } else {
            // flat or concave along the pair: the maximum sits at an endpoint
            double s = labels[i] * labels[j];
            double gamma = ai_old + s * aj_old;
            // u_k = contribution of all other points to f(x_k)
            double ui = decision(i) - d.bias - ai_old * labels[i] * gram(i, i) -
                        aj_old * labels[j] * gram(i, j);
            double uj = decision(j) - d.bias - ai_old * labels[i] * gram(i, j) -
                        aj_old * labels[j] * gram(j, j);
            auto dual_at = [&](double t) {
                double a1 = gamma - s * t;
                return a1 + t -
                       0.5 * (a1 * a1 * gram(i, i) + t * t * gram(j, j)) -
                       s * a1 * t * gram(i, j) - a1 * labels[i] * ui - t * labels[j] * uj;
            };
            double wl = dual_at(lo), wh = dual_at(hi);
            if (wl > wh + 1e-12)
                aj = lo;
            else if (wh > wl + 1e-12)
                aj = hi;
            else
                return false;
        }
        if (std::fabs(aj - aj_old) < 1e-12 * (aj + aj_old + 1e-12)) return false;
        double ai = ai_old + labels[i] * labels[j] * (aj_old - aj);
        d.alpha[i] = ai;
        d.alpha[j] = aj;
        double b1 = d.bias - ei - labels[i] * (ai - ai_old) * gram(i, i) -
                    labels[j] * (aj - aj_old) * gram(i, j);
        double b2 = d.bias - ej - labels[i] * (ai - ai_old) * gram(i, j) -
                    labels[j] * (aj - aj_old) * gram(j, j);
        if (ai > 0.0 && ai < c)
            d.bias = b1;
        else if (aj > 0.0 && aj < c)
            d.bias = b2;
        else
            d.bias = 0.5 * (b1 + b2);
        return true;
    };

    bool examine_all = true;
    int passes = 0;
    while (passes < max_passes) {
        ++passes;
        int changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!examine_all && (d.alpha[i] <= 0.0 || d.alpha[i] >= c)) continue;
            double ei = decision(i) - labels[i];
            double r = ei * labels[i];
            if (!((r < -kkt_tol && d.alpha[i] < c) || (r > kkt_tol && d.alpha[i] > 0.0))) continue;

            // second-choice heuristic: largest |E_i - E_j|, lowest index on ties
            std::size_t best_j = n;
            double best_gap = -1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                double gap = std::fabs(ei - (decision(j) - labels[j]));
                if (gap > best_gap + 1e-15) {
                    best_gap = gap;
                    best_j = j;
                }
            }
            if (best_j < n && try_pair(i, best_j, ei)) {
                ++changed;
                continue;
            }
            for (std::size_t off = 1; off < n; ++off) {
                std::size_t j = (i + off) % n;
                if (try_pair(i, j, ei)) {
                    ++changed;
                    break;
                }
            }
        }
        if (changed == 0) {
            if (examine_all) break;
            examine_all = true;
        } else {
            examine_all = false;
        }
    }
    d.passes = passes;
    d.converged = passes < max_passes;

    d.dual_objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d.alpha[i] == 0.0) continue;
        d.dual_objective += d.alpha[i];
        for (std::size_t j = 0; j < n; ++j)
            if (d.alpha[j] != 0.0)
                d.dual_objective -=
                    0.5 * d.alpha[i] * d.alpha[j] * labels[i] * labels[j] * gram(i, j);
    }
    return d;
}

SvmDual svm_fit(const DenseMatrix& features, const std::vector<int>& labels, double c,
                const KernelSpec& kernel, double kkt_tol, int max_passes) {
    return svm_fit(gram_matrix(kernel, features), labels, c, kkt_tol, max_passes);
}

double svm_decision_value(const SvmDual& dual, const DenseMatrix& features,
                          const std::vector<int>& labels, const KernelSpec& kernel,
                          const std::vector<double>& x) {
    double f = dual.bias;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (dual.alpha[i] != 0.0)
            f += dual.alpha[i] * labels[i] *
                 kernel_eval(kernel, features.row(i), x.data(), x.size());
    return f;
}

namespace {

class SvmModel final : public Classifier {
public:
    DenseMatrix train_x;
    std::vector<int> y;  // -1/+1, class 0 -> -1, class 1 -> +1
    KernelSpec kernel;
    SvmDual dual;
    std::vector<FeatureKind> kinds;

    Prediction predict(const Row& row) const override {
        if (row.size() != kinds.size()) throw InputError("svm: schema mismatch");
        std::vector<double> x(row.size());
        for (std::size_t f = 0; f < row.size(); ++f) x[f] = row[f].num;
        double f = svm_decision_value(dual, train_x, y, kernel, x);
        double s = 1.0 / (1.0 + std::exp(-f));
        Prediction p;
        p.scores = {1.0 - s, s};
        p.label = argmax_class(p.scores);
        return p;
    }

    Algorithm algorithm() const override { return Algorithm::svm; }
};

}  // namespace

// ---- logistic regression -------------------------------------------------------------

double logistic_objective(const DenseMatrix& x, const std::vector<int>& y, double ridge,
                          const std::vector<double>& beta) {
    const std::size_t n = x.rows(), p = x.cols();
    if (beta.size() != p + 1) throw InputError("logistic_objective: beta size mismatch");
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double t = beta[0] + simd::dot(x.row(i), beta.data() + 1, p);
        // log(1 + e^t), overflow safe
        double log1pe = t > 30.0 ? t : std::log1p(std::exp(t));
        ll += y[i] * t - log1pe;
    }
    double pen = 0.0;
    for (double b : beta) pen += b * b;
    return ll - 0.5 * ridge * pen;
}

LogisticFit logistic_fit(const DenseMatrix& x, const std::vector<int>& y, double ridge,
                         int max_iter, double tol) {
    const std::size_t n = x.rows(), p = x.cols();
    if (y.size() != n) throw InputError("logistic_fit: label count mismatch");
    if (p == 0) throw InputError("logistic_fit: need at least one feature");
    bool has0 = false, has1 = false;
    for (int v : y) {
        if (v == 0) has0 = true;
        else if (v == 1) has1 = true;
        else throw InputError("logistic_fit: labels must be 0 or 1");
    }
    if (!has0 || !has1) throw InputError("logistic_fit: both classes must be present");

    const std::size_t d = p + 1;
    LogisticFit fit;
    fit.beta.assign(d, 0.0);
    std::vector<double> grad(d), prob(n);

    auto compute_grad = [&]() {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double t = fit.beta[0] + simd::dot(x.row(i), fit.beta.data() + 1, p);
            prob[i] = 1.0 / (1.0 + std::exp(-t));
            double r = y[i] - prob[i];
            grad[0] += r;
            simd::axpy(r, x.row(i), grad.data() + 1, p);
        }
        for (std::size_t j = 0; j < d; ++j) grad[j] -= ridge * fit.beta[j];
        double g = 0.0;
        for (double v : grad) g = std::max(g, std::fabs(v));
        return g;
    };

    double obj = logistic_objective(x, y, ridge, fit.beta);
    int it = 0;
    for (; it < max_iter; ++it) {
        fit.grad_inf_norm = compute_grad();
        if (fit.grad_inf_norm < tol) {
            fit.converged = true;
            break;
        }
        // Newton system: (X~' W X~ + ridge I) step = grad
        DenseMatrix h(d, d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double w = std::max(prob[i] * (1.0 - prob[i]), 1e-12);
            std::vector<double> xi(d);
            xi[0] = 1.0;
            for (std::size_t j = 0; j < p; ++j) xi[j + 1] = x(i, j);
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = a; b < d; ++b) h(a, b) += w * xi[a] * xi[b];
        }
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < a; ++b) h(a, b) = h(b, a);
            h(a, a) += std::max(ridge, 1e-12);
        }
        std::vector<double> step = cholesky_solve(cholesky_factor(h), grad);

        // backtrack if the full Newton step overshoots
        double scale = 1.0;
        std::vector<double> beta_old = fit.beta;
        for (int half = 0; half < 30; ++half) {
            for (std::size_t j = 0; j < d; ++j) fit.beta[j] = beta_old[j] + scale * step[j];
            double new_obj = logistic_objective(x, y, ridge, fit.beta);
            if (new_obj >= obj - 1e-14) {
                obj = new_obj;
                break;
            }
            scale *= 0.5;
        }
    }
    fit.iterations = it;
    double bmax = 0.0;
    for (double b : fit.beta) bmax = std::max(bmax, std::fabs(b));
    fit.separation_flag = bmax > 10.0;
    if (!fit.converged) fit.grad_inf_norm = compute_grad();
    return fit;
}

double logistic_predict(const std::vector<double>& beta, const std::vector<double>& x) {
    if (beta.size() != x.size() + 1) throw InputError("logistic_predict: dimension mismatch");
    double t = beta[0] + simd::dot(x.data(), beta.data() + 1, x.size());
    return 1.0 / (1.0 + std::exp(-t));
}

namespace {

class LogisticModel final : public Classifier {
public:
    LogisticFit fit;
    std::vector<FeatureKind> kinds;

    Prediction predict(const Row& row) const override {
        if (row.size() != kinds.size()) throw InputError("logistic: schema mismatch");
        std::vector<double> x(row.size());
        for (std::size_t f = 0; f < row.size(); ++f) x[f] = row[f].num;
        double s = logistic_predict(fit.beta, x);
        Prediction p;
        p.scores = {1.0 - s, s};
        p.label = argmax_class(p.scores);
        return p;
    }

    Algorithm algorithm() const override { return Algorithm::logistic_regression; }
};

}  // namespace

// ---- unified fit ------------------------------------------------------------------

std::unique_ptr<Classifier> fit(const ClassifierConfig& config, const LabeledTable& data) {
    config.validate();
    data.validate();
    if (data.n_rows() == 0) throw InputError("fit: empty training set");

    bool discriminative = config.algorithm == Algorithm::logistic_regression ||
                          config.algorithm == Algorithm::rls || config.algorithm == Algorithm::svm;
    if (discriminative && data.n_classes() != 2)
        throw ConfigError(algorithm_name(config.algorithm) + " requires exactly two classes, got " +
                          std::to_string(data.n_classes()));

    switch (config.algorithm) {
        case Algorithm::knn: {
            auto m = std::make_unique<KnnModel>();
            m->train = data;
            m->k = config.k;
            m->weighted = config.distance_weighted;
            return m;
        }
        case Algorithm::naive_bayes:
            return fit_naive_bayes(config, data);
        case Algorithm::decision_tree:
            return fit_tree(config, data);
        case Algorithm::logistic_regression: {
            auto m = std::make_unique<LogisticModel>();
            m->kinds = data.feature_kinds;
            DenseMatrix x = numeric_features(data);
            m->fit = logistic_fit(x, data.labels, config.logistic_ridge, config.logistic_max_iter,
                                  config.logistic_tol);
            if (!m->fit.converged)
                throw ConvergenceError("logistic regression: no convergence after " +
                                           std::to_string(m->fit.iterations) + " iterations",
                                       m->fit.beta);
            return m;
        }
        case Algorithm::rls: {
            auto m = std::make_unique<RlsModel>();
            m->kinds = data.feature_kinds;
            m->train_x = numeric_features(data);
            m->kernel = config.kernel;
            DenseMatrix k = ensure_psd(gram_matrix(m->kernel, m->train_x));
            std::vector<double> y(data.n_rows());
            for (std::size_t i = 0; i < data.n_rows(); ++i) y[i] = data.labels[i];
            m->coef = rls_fit(k, y, config.delta);
            return m;
        }
        case Algorithm::svm: {
            auto m = std::make_unique<SvmModel>();
            m->kinds = data.feature_kinds;
            m->train_x = numeric_features(data);
            m->kernel = config.kernel;
            m->y.resize(data.n_rows());
            for (std::size_t i = 0; i < data.n_rows(); ++i)
                m->y[i] = data.labels[i] == 1 ? 1 : -1;
            DenseMatrix gram = ensure_psd(gram_matrix(m->kernel, m->train_x));
            m->dual = svm_fit(gram, m->y, config.svm_c, config.svm_kkt_tol, config.svm_max_passes);
            if (!m->dual.converged)
                throw ConvergenceError("svm: pass cap exceeded", m->dual.alpha);
            return m;
        }
        case Algorithm::bagging:
        case Algorithm::boosting:
        case Algorithm::random_forest:
            return fit_ensemble(config, data);
    }
    throw ConfigError("fit: unknown algorithm");
}

}  // namespace dti
