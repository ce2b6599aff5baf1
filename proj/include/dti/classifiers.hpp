#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dti/linalg.hpp"
#include "dti/table.hpp"

namespace dti {

enum class Algorithm {
    knn,
    naive_bayes,
    decision_tree,
    logistic_regression,
    rls,
    svm,
    bagging,
    boosting,
    random_forest,
};

enum class SplitCriterion { entropy, gini };
enum class Pruning { none, reduced_error };

Algorithm algorithm_from_string(const std::string& s);
std::string algorithm_name(Algorithm a);

// One config covers the whole suite; parameters not used by the selected
// algorithm are ignored.
struct ClassifierConfig {
    Algorithm algorithm = Algorithm::decision_tree;

    int k = 3;                      // knn
    bool distance_weighted = false; // knn

    SplitCriterion split_criterion = SplitCriterion::entropy;
    Pruning pruning = Pruning::none;
    double pruning_holdout = 0.2;

    bool laplace_smoothing = true;  // naive bayes categorical estimates

    double delta = 1.0;             // rls regularization
    KernelSpec kernel = KernelSpec::gaussian(1.0);

    double svm_c = 1.0;
    double svm_kkt_tol = 1e-3;
    int svm_max_passes = 100000;

    double logistic_ridge = 1e-6;
    int logistic_max_iter = 100;
    double logistic_tol = 1e-8;

    Algorithm base_algorithm = Algorithm::decision_tree;  // ensembles
    int ensemble_size = 10;
    int feature_subset_size = 0;    // random forest; 0 = ceil(sqrt(p))

    std::uint64_t seed = 1;

    void validate() const;
};

struct Prediction {
    int label = 0;
    std::vector<double> scores;  // per class, in declaration order
};

// Fitted model. Immutable after fit; predict is safe for concurrent callers.
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual Prediction predict(const Row& row) const = 0;
    virtual Algorithm algorithm() const = 0;
};

std::unique_ptr<Classifier> fit(const ClassifierConfig& config, const LabeledTable& data);

// ---- impurity measures -----------------------------------------------------

// Expected information (bits) of a label multiset; 0 log 0 := 0.
double entropy(const std::vector<int>& labels);
double entropy_from_counts(const std::vector<std::size_t>& counts);
double gini_from_counts(const std::vector<std::size_t>& counts);

// Parent entropy minus the value-weighted child entropy of a categorical
// attribute. Numeric attributes need a threshold split and are rejected here.
double information_gain(const LabeledTable& data, std::size_t attribute);

// ---- regularized least squares ----------------------------------------------

// c = (K + delta I)^{-1} y
std::vector<double> rls_fit(const DenseMatrix& k, const std::vector<double>& y, double delta);
// k_hat . c
double rls_predict(const std::vector<double>& c, const std::vector<double>& k_hat);

// ---- support vector machine --------------------------------------------------

struct SvmDual {
    std::vector<double> alpha;  // box constrained: 0 <= alpha_i <= C
    double bias = 0.0;          // decision value f(x) = sum_i alpha_i y_i k(x_i,x) + bias
    int passes = 0;
    bool converged = false;
    double dual_objective = 0.0;
};

// Two-variable coordinate ascent on the dual (SMO). Labels must be -1/+1.
SvmDual svm_fit(const DenseMatrix& gram, const std::vector<int>& labels, double c,
                double kkt_tol = 1e-3, int max_passes = 100000);
SvmDual svm_fit(const DenseMatrix& features, const std::vector<int>& labels, double c,
                const KernelSpec& kernel, double kkt_tol = 1e-3, int max_passes = 100000);
double svm_decision_value(const SvmDual& dual, const DenseMatrix& features,
                          const std::vector<int>& labels, const KernelSpec& kernel,
                          const std::vector<double>& x);

// ---- logistic regression -----------------------------------------------------

struct LogisticFit {
    std::vector<double> beta;  // [intercept, coefficients...]
    bool converged = false;
    bool separation_flag = false;  // coefficients hit the separation bound
    int iterations = 0;
    double grad_inf_norm = 0.0;
};

// Newton iterations on the ridge-penalized log-likelihood
//   sum_i [y_i t_i - log(1 + e^{t_i})] - ridge/2 * ||beta||^2,  t_i = beta0 + x_i . beta.
// The penalty covers the intercept as well. Labels must be 0/1.
LogisticFit logistic_fit(const DenseMatrix& x, const std::vector<int>& y, double ridge = 1e-6,
                         int max_iter = 100, double tol = 1e-8);
double logistic_predict(const std::vector<double>& beta, const std::vector<double>& x);

// Penalized log-likelihood of the model above; exposed so tests can check the
// returned beta against finite differences.
double logistic_objective(const DenseMatrix& x, const std::vector<int>& y, double ridge,
                          const std::vector<double>& beta);

// ---- decision tree (concrete type exposed for structure checks) --------------

struct TreeNode {
    bool leaf = true;
    std::vector<double> class_freq;  // training distribution at this node
    int majority = 0;
    int feature = -1;
    bool numeric_split = false;
    double threshold = 0.0;  // numeric: left if value <= threshold
    std::vector<std::unique_ptr<TreeNode>> children;
};

class DecisionTreeModel : public Classifier {
public:
    Prediction predict(const Row& row) const override;
    Algorithm algorithm() const override { return Algorithm::decision_tree; }

    const TreeNode& root() const { return *root_; }
    // Name of the root split attribute, or "" for a leaf-only tree.
    std::string root_attribute() const;
    const std::vector<std::string>& class_names() const { return class_names_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }

    friend std::unique_ptr<DecisionTreeModel> fit_tree(const ClassifierConfig&,
                                                       const LabeledTable&);

private:
    std::unique_ptr<TreeNode> root_;
    std::vector<FeatureKind> kinds_;
    std::vector<std::string> feature_names_;
    std::vector<std::vector<std::string>> levels_;
    std::vector<std::string> class_names_;
};

std::unique_ptr<DecisionTreeModel> fit_tree(const ClassifierConfig& config,
                                            const LabeledTable& data);

// ---- naive Bayes (concrete type exposed so tests can probe priors) -----------

class NaiveBayesModel : public Classifier {
public:
    Prediction predict(const Row& row) const override;
    Algorithm algorithm() const override { return Algorithm::naive_bayes; }

    std::vector<double> log_priors;  // mutable copies are useful in tests
    // cat_counts[f][c][level]; numeric_stats[f][c] = {mean, stddev}
    std::vector<std::vector<std::vector<double>>> cat_counts;
    std::vector<std::vector<std::pair<double, double>>> numeric_stats;
    std::vector<double> class_totals;
    std::vector<FeatureKind> kinds;
    bool laplace = true;
    std::size_t n_classes = 0;
};

std::unique_ptr<NaiveBayesModel> fit_naive_bayes(const ClassifierConfig& config,
                                                 const LabeledTable& data);

// ---- ensembles ----------------------------------------------------------------

class EnsembleModel : public Classifier {
public:
    Prediction predict(const Row& row) const override;
    Algorithm algorithm() const override { return kind_; }

    // Plain weighted-vote combiner over already-fitted models.
    static std::unique_ptr<EnsembleModel> voting(std::vector<std::unique_ptr<Classifier>> members,
                                                 std::vector<double> weights,
                                                 std::size_t n_classes);

    std::size_t size() const { return members_.size(); }
    const std::vector<double>& member_weights() const { return weights_; }
    const Classifier& member(std::size_t i) const { return *members_[i]; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    // Weighted training error of each accepted boosting round.
    const std::vector<double>& round_errors() const { return round_errors_; }

    friend std::unique_ptr<EnsembleModel> fit_ensemble(const ClassifierConfig&,
                                                       const LabeledTable&);

private:
    Algorithm kind_ = Algorithm::bagging;
    std::vector<std::unique_ptr<Classifier>> members_;
    std::vector<double> weights_;
    std::vector<double> fallback_scores_;  // class frequencies, used when empty
    std::size_t n_classes_ = 0;
    std::vector<std::string> warnings_;
    std::vector<double> round_errors_;
};

std::unique_ptr<EnsembleModel> fit_ensemble(const ClassifierConfig& config,
                                            const LabeledTable& data);

// ---- helpers shared by the suite ---------------------------------------------

// First index of the maximal score: the declaration-order tie-break.
int argmax_class(const std::vector<double>& scores);

// Numeric feature matrix; throws ConfigError naming the first categorical
// feature if the table is not all-numeric.
DenseMatrix numeric_features(const LabeledTable& data);

LabeledTable table_with_rows(const LabeledTable& t, const std::vector<std::size_t>& row_idx);
LabeledTable table_with_features(const LabeledTable& t, const std::vector<std::size_t>& feat_idx);

}  // namespace dti
