#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dti/classifiers.hpp"
#include "dti/datasets.hpp"
#include "dti/rng.hpp"
#include "oracles.hpp"

using namespace dti;

namespace {

LabeledTable numeric_table(const std::vector<std::vector<double>>& xs,
                           const std::vector<std::string>& labels) {
    LabeledTable t;
    for (std::size_t f = 0; f < xs[0].size(); ++f)
        t.add_feature("x" + std::to_string(f), FeatureKind::numeric);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<std::string> row;
        for (double v : xs[i]) row.push_back(std::to_string(v));
        t.add_row(row, labels[i]);
    }
    return t;
}

Row numeric_row(const std::vector<double>& x) {
    Row r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i].num = x[i];
    return r;
}

}  // namespace

// ---- entropy and information gain ------------------------------------------

TEST_CASE("entropy golden values") {
    std::vector<int> weather_labels;
    for (int i = 0; i < 9; ++i) weather_labels.push_back(0);
    for (int i = 0; i < 5; ++i) weather_labels.push_back(1);
    CHECK(entropy(weather_labels) == doctest::Approx(0.940).epsilon(0.002));
    CHECK(entropy({2, 2, 2}) == doctest::Approx(0.0));
    CHECK(entropy({0, 1}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(entropy({}), InputError);
}

TEST_CASE("entropy is permutation invariant and maximal at uniform") {
    Rng rng(5);
    std::vector<int> labels{0, 0, 1, 2, 2, 2, 1, 0, 1};
    double base = entropy(labels);
    for (int rep = 0; rep < 10; ++rep) {
        rng.shuffle(labels);
        CHECK(entropy(labels) == doctest::Approx(base));
    }
    CHECK(entropy({0, 1, 2, 0, 1, 2}) == doctest::Approx(std::log2(3.0)));
    CHECK(entropy({0, 0, 1, 2, 1, 0}) < std::log2(3.0));
}

TEST_CASE("information gain on the weather table matches the worked example") {
    LabeledTable w = weather_fixture();
    CHECK(information_gain(w, 0) == doctest::Approx(0.246).epsilon(0.005));  // Outlook
    CHECK(information_gain(w, 1) == doctest::Approx(0.029).epsilon(0.04));   // Temperature
    CHECK(information_gain(w, 2) == doctest::Approx(0.152).epsilon(0.007));  // Humidity
    CHECK(information_gain(w, 3) == doctest::Approx(0.048).epsilon(0.02));   // Windy
}

TEST_CASE("information gain bounds and the constant attribute") {
    LabeledTable t;
    t.add_feature("const", FeatureKind::categorical);
    t.add_feature("num", FeatureKind::numeric);
    t.add_row({"same", "1"}, "a");
    t.add_row({"same", "2"}, "b");
    t.add_row({"same", "3"}, "a");
    CHECK(information_gain(t, 0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(information_gain(t, 1), ConfigError);

    LabeledTable w = weather_fixture();
    double h = entropy(w.labels);
    for (std::size_t f = 0; f < w.n_features(); ++f) {
        double g = information_gain(w, f);
        CHECK(g >= -1e-12);
        CHECK(g <= h + 1e-12);
    }
}

// ---- decision tree ------------------------------------------------------------

TEST_CASE("weather tree: root Outlook, Overcast branch is a pure Yes leaf") {
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::decision_tree;
    LabeledTable w = weather_fixture();
    auto tree = fit_tree(cfg, w);
    CHECK(tree->root_attribute() == "Outlook");

    int overcast = w.level_index(0, "Overcast");
    const TreeNode& branch = *tree->root().children[overcast];
    CHECK(branch.leaf);
    CHECK(tree->class_names()[branch.majority] == "Yes");
    CHECK(branch.class_freq[w.class_index("Yes")] == doctest::Approx(1.0));

    // full tree reproduces every training label
    for (std::size_t i = 0; i < w.n_rows(); ++i)
        CHECK(tree->predict(w.rows[i]).label == w.labels[i]);
}

TEST_CASE("gini criterion also picks Outlook on weather") {
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::decision_tree;
    cfg.split_criterion = SplitCriterion::gini;
    auto tree = fit_tree(cfg, weather_fixture());
    CHECK(tree->root_attribute() == "Outlook");
}

TEST_CASE("unpruned tree is exact on consistent data") {
    Rng rng(41);
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<std::vector<double>> xs;
        std::vector<std::string> labels;
        for (int i = 0; i < 40; ++i) {
            double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
            xs.push_back({a, b});
            labels.push_back(a + b > 0.2 ? "pos" : "neg");
        }
        LabeledTable t = numeric_table(xs, labels);
        ClassifierConfig cfg;
        cfg.algorithm = Algorithm::decision_tree;
        auto tree = fit_tree(cfg, t);
        for (std::size_t i = 0; i < t.n_rows(); ++i)
            CHECK(tree->predict(t.rows[i]).label == t.labels[i]);
    }
}

TEST_CASE("numeric splits use midpoint thresholds") {
    LabeledTable t = numeric_table({{1.0}, {2.0}, {3.0}, {4.0}}, {"a", "a", "b", "b"});
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::decision_tree;
    auto tree = fit_tree(cfg, t);
    REQUIRE(!tree->root().leaf);
    CHECK(tree->root().numeric_split);
    CHECK(tree->root().threshold == doctest::Approx(2.5));
}

TEST_CASE("reduced-error pruning does not grow the tree") {
    Rng rng(17);
    std::vector<std::vector<double>> xs;
    std::vector<std::string> labels;
    for (int i = 0; i < 60; ++i) {
        double a = rng.uniform(-1, 1);
        xs.push_back({a, rng.uniform(-1, 1)});
        // noisy labels force overfitting
        bool flip = rng.uniform() < 0.2;
        labels.push_back((a > 0) != flip ? "p" : "n");
    }
    LabeledTable t = numeric_table(xs, labels);
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::decision_tree;
    cfg.seed = 7;
    auto full = fit_tree(cfg, t);
    cfg.pruning = Pruning::reduced_error;
    auto pruned = fit_tree(cfg, t);

    std::function<std::size_t(const TreeNode&)> count = [&](const TreeNode& n) -> std::size_t {
        std::size_t c = 1;
        for (const auto& ch : n.children) c += count(*ch);
        return c;
    };
    CHECK(count(pruned->root()) <= count(full->root()));
    // pruned tree still answers
    CHECK_NOTHROW(pruned->predict(t.rows[0]));
}

// ---- k nearest neighbors ---------------------------------------------------------

TEST_CASE("knn k=1 returns the training point's own label") {
    LabeledTable t = numeric_table({{0, 0}, {1, 1}, {2, 2}}, {"a", "b", "c"});
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::knn;
    cfg.k = 1;
    auto m = fit(cfg, t);
    for (std::size_t i = 0; i < t.n_rows(); ++i)
        CHECK(m->predict(t.rows[i]).label == t.labels[i]);
}

TEST_CASE("knn k=3: two-of-three vote beats the single nearest neighbor") {
    // nearest neighbor of the query is class2, but the next two are class1
    LabeledTable t = numeric_table({{0.5, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {5.0, 5.0}, {6.0, 5.0}},
                                   {"class2", "class1", "class1", "class2", "class2"});
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::knn;
    cfg.k = 1;
    auto m1 = fit(cfg, t);
    Row q = numeric_row({0.0, 0.0});
    CHECK(m1->predict(q).label == t.class_index("class2"));
    cfg.k = 3;
    auto m3 = fit(cfg, t);
    Prediction p = m3->predict(q);
    CHECK(p.label == t.class_index("class1"));
    CHECK(p.scores[t.class_index("class1")] == doctest::Approx(2.0 / 3));
}

TEST_CASE("knn with k = n predicts the majority class everywhere") {
    Rng rng(3);
    std::vector<std::vector<double>> xs;
    std::vector<std::string> labels;
    for (int i = 0; i < 21; ++i) {
        xs.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5)});
        labels.push_back(i % 3 == 0 ? "minor" : "major");
    }
    LabeledTable t = numeric_table(xs, labels);
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::knn;
    cfg.k = static_cast<int>(t.n_rows());
    auto m = fit(cfg, t);
    for (int rep = 0; rep < 10; ++rep) {
        Row q = numeric_row({rng.uniform(-5, 5), rng.uniform(-5, 5)});
        CHECK(m->predict(q).label == t.class_index("major"));
    }
}

TEST_CASE("distance-weighted knn favors the closer neighbor") {
    LabeledTable t = numeric_table({{0.0}, {10.0}, {11.0}}, {"near", "far", "far"});
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::knn;
    cfg.k = 3;
    cfg.distance_weighted = true;
    auto m = fit(cfg, t);
    CHECK(m->predict(numeric_row({0.5})).label == t.class_index("near"));
}

TEST_CASE("knn handles categorical features by mismatch distance") {
    LabeledTable t;
    t.add_feature("color", FeatureKind::categorical);
    t.add_row({"red"}, "warm");
    t.add_row({"blue"}, "cold");
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::knn;
    cfg.k = 1;
    auto m = fit(cfg, t);
    CHECK(m->predict(t.encode_row({"red"})).label == t.class_index("warm"));
    // unseen level: equidistant from both, tie breaks to the first class
    CHECK(m->predict(t.encode_row({"green"})).label == 0);
}

// ---- naive Bayes ------------------------------------------------------------------

TEST_CASE("naive bayes: symmetric classes score (0.5, 0.5)") {
    LabeledTable t = numeric_table({{-1.0}, {-2.0}, {1.0}, {2.0}}, {"lo", "lo", "hi", "hi"});
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::naive_bayes;
    auto m = fit(cfg, t);
    Prediction p = m->predict(numeric_row({0.0}));
    CHECK(p.scores[0] == doctest::Approx(0.5));
    CHECK(p.scores[1] == doctest::Approx(0.5));
}

TEST_CASE("naive bayes scores sum to one") {
    LabeledTable w = weather_fixture();
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::naive_bayes;
    auto m = fit(cfg, w);
    for (const Row& r : w.rows) {
        Prediction p = m->predict(r);
        double s = 0.0;
        for (double v : p.scores) s += v;
        CHECK(std::fabs(s - 1.0) <= 1e-9);
        CHECK(p.label == argmax_class(p.scores));
    }
}

TEST_CASE("naive bayes is monotone in the class prior") {
    LabeledTable t = numeric_table({{-1.0}, {1.0}, {-1.2}, {1.2}}, {"a", "b", "a", "b"});
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::naive_bayes;
    auto m = fit_naive_bayes(cfg, t);
    Row q = numeric_row({0.0});
    Prediction before = m->predict(q);
    m->log_priors[1] += 2.0;  // inflate class b
    Prediction after = m->predict(q);
    CHECK(after.scores[1] >= before.scores[1]);
    bool moved_toward_or_stayed = after.label == 1 || after.label == before.label;
    CHECK(moved_toward_or_stayed);
}

TEST_CASE("laplace smoothing keeps unseen categorical levels nonzero") {
    LabeledTable w = weather_fixture();
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::naive_bayes;
    auto m = fit(cfg, w);
    Row q = w.encode_row({"Sunny", "Hot", "High", "False"});
    q[0].cat = -1;  // unseen outlook value
    Prediction p = m->predict(q);
    CHECK(p.scores[0] > 0.0);
    CHECK(p.scores[1] > 0.0);
}

// ---- regularized least squares ------------------------------------------------------

TEST_CASE("rls closed-form toys") {
    DenseMatrix k = DenseMatrix::identity(2);
    // delta -> 0: interpolates the training labels
    auto c = rls_fit(k, {1.0, 0.0}, 1e-12);
    CHECK(rls_predict(c, {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-9));
    // delta = 1, y=(2,0): c=(1,0)
    auto c2 = rls_fit(k, {2.0, 0.0}, 1.0);
    CHECK(c2[0] == doctest::Approx(1.0));
    CHECK(c2[1] == doctest::Approx(0.0));
    CHECK(rls_predict(c2, {1.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("rls matches the brute-force inverse oracle") {
    Rng rng(29);
    for (int rep = 0; rep < 10; ++rep) {
        DenseMatrix k = oracle::random_psd(6, rng);
        std::vector<double> y(6);
        for (auto& v : y) v = rng.uniform(-1, 1);
        DenseMatrix a = k;
        for (std::size_t i = 0; i < 6; ++i) a(i, i) += 0.3;
        auto c = rls_fit(k, y, 0.3);
        auto ref = oracle::solve_by_inverse(a, y);
        for (std::size_t i = 0; i < 6; ++i)
            CHECK(c[i] == doctest::Approx(ref[i]).epsilon(1e-8));
    }
}

TEST_CASE("rls coefficient norm shrinks as delta grows") {
    Rng rng(31);
    DenseMatrix k = oracle::random_psd(8, rng);
    std::vector<double> y(8);
    for (auto& v : y) v = rng.uniform(-1, 1);
    double prev = 1e300;
    for (double delta = 0.01; delta < 1e4; delta *= 10.0) {
        auto c = rls_fit(k, y, delta);
        double norm = 0.0;
        for (double v : c) norm += v * v;
        CHECK(norm <= prev + 1e-12);
        prev = norm;
    }
}

// ---- support vector machine -----------------------------------------------------------

TEST_CASE("svm two-point dual solved by hand") {
    // x=-1 labeled -1 and x=+1 labeled +1 under the linear (degree-1) kernel:
    // K = [[2,0],[0,2]], equal alphas maximize 2a - 2a^2 at a = 1/2
    DenseMatrix gram = DenseMatrix::from_rows({{2.0, 0.0}, {0.0, 2.0}});
    std::vector<int> y{-1, 1};
    SvmDual d = svm_fit(gram, y, 1e6);
    CHECK(d.alpha[0] == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(d.alpha[1] == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(d.alpha[0] == doctest::Approx(d.alpha[1]));

    DenseMatrix feats = DenseMatrix::from_rows({{-1.0}, {1.0}});
    // decision value at the midpoint is the boundary
    CHECK(std::fabs(svm_decision_value(d, feats, y, KernelSpec::polynomial(1), {0.0})) <= 2e-3);
    CHECK(svm_decision_value(d, feats, y, KernelSpec::polynomial(1), {0.7}) > 0.0);
    CHECK(svm_decision_value(d, feats, y, KernelSpec::polynomial(1), {-0.7}) < 0.0);
}

TEST_CASE("svm separable 2-D sets train to zero errors") {
    Rng rng(7);
    for (int rep = 0; rep < 5; ++rep) {
        std::size_t n = 14;
        DenseMatrix x(n, 2);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            bool pos = i % 2 == 0;
            x(i, 0) = rng.uniform(0.2, 1.2) * (pos ? 1 : -1);
            x(i, 1) = rng.uniform(-1, 1);
            y[i] = pos ? 1 : -1;
        }
        SvmDual d = svm_fit(x, y, 10.0, KernelSpec::polynomial(1));
        int errors = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> xi{x(i, 0), x(i, 1)};
            double f = svm_decision_value(d, x, y, KernelSpec::polynomial(1), xi);
            if ((f >= 0 ? 1 : -1) != y[i]) ++errors;
        }
        CHECK(errors == 0);
    }
}

TEST_CASE("svm conflicting duplicates cap both alphas at C") {
    DenseMatrix gram = DenseMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}});
    std::vector<int> y{1, -1};
    double c = 0.01;
    SvmDual d = svm_fit(gram, y, c);
    CHECK(d.alpha[0] == doctest::Approx(c));
    CHECK(d.alpha[1] == doctest::Approx(c));
}

TEST_CASE("svm dual feasibility holds on random problems") {
    Rng rng(13);
    for (int rep = 0; rep < 25; ++rep) {
        std::size_t n = 4 + rng.below(8);
        DenseMatrix x(n, 3);
        std::vector<int> y(n);
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (int f = 0; f < 3; ++f) x(i, f) = rng.uniform(-1, 1);
            y[i] = rng.uniform() < 0.5 ? -1 : 1;
            (y[i] > 0 ? pos : neg) = true;
        }
        if (!pos) y[0] = 1;
        if (!neg) y[1] = -1;
        double c = 1.0;
        SvmDual d = svm_fit(x, y, c, KernelSpec::gaussian(1.0));
        double balance = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(d.alpha[i] >= 0.0);
            CHECK(d.alpha[i] <= c);
            balance += d.alpha[i] * y[i];
        }
        CHECK(std::fabs(balance) <= 1e-6);
    }
}

TEST_CASE("svm dual objective matches a projected-gradient reference") {
    Rng rng(19);
    for (int rep = 0; rep < 3; ++rep) {
        std::size_t n = 5;
        DenseMatrix g = oracle::random_psd(n, rng);
        for (std::size_t i = 0; i < n; ++i) g(i, i) += 0.5;
        std::vector<int> y{1, -1, 1, -1, 1};
        SvmDual d = svm_fit(g, y, 2.0);
        double ref = oracle::svm_dual_reference(g, y, 2.0);
        CHECK(d.dual_objective == doctest::Approx(ref).epsilon(2e-3));
    }
}

// ---- logistic regression -----------------------------------------------------------

TEST_CASE("logistic function basics") {
    CHECK(logistic_predict({0.0, 0.0}, {3.7}) == doctest::Approx(0.5));
    CHECK(logistic_predict({0.0, 50.0}, {2.0}) == doctest::Approx(1.0));
    CHECK(logistic_predict({0.0, 50.0}, {-2.0}) == doctest::Approx(0.0));
}

TEST_CASE("logistic fit zeroes the penalized gradient (finite differences)") {
    DenseMatrix x = DenseMatrix::from_rows({{-1.0}, {1.0}});
    std::vector<int> y{0, 1};
    double ridge = 0.1;
    LogisticFit f = logistic_fit(x, y, ridge);
    REQUIRE(f.converged);
    auto obj = [&](const std::vector<double>& beta) {
        return logistic_objective(x, y, ridge, beta);
    };
    auto g = oracle::fd_gradient(obj, f.beta);
    for (double v : g) CHECK(std::fabs(v) <= 1e-6);  // fd noise floor
    CHECK(f.grad_inf_norm <= 1e-8);
}

TEST_CASE("logistic regression separates a separable 2-point set") {
    LabeledTable t = numeric_table({{-1.0}, {1.0}}, {"n", "p"});
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::logistic_regression;
    auto m = fit(cfg, t);
    CHECK(m->predict(t.rows[0]).label == t.labels[0]);
    CHECK(m->predict(t.rows[1]).label == t.labels[1]);
}

TEST_CASE("logistic fit flags near-separation under a tiny ridge") {
    DenseMatrix x = DenseMatrix::from_rows({{-1.0}, {1.0}});
    std::vector<int> y{0, 1};
    LogisticFit f = logistic_fit(x, y, 1e-14, 500);
    CHECK(f.separation_flag);
}

// ---- ensembles -----------------------------------------------------------------------

TEST_CASE("bagging with one member equals that member") {
    Rng rng(23);
    std::vector<std::vector<double>> xs;
    std::vector<std::string> labels;
    for (int i = 0; i < 30; ++i) {
        double a = rng.uniform(-1, 1);
        xs.push_back({a, rng.uniform(-1, 1)});
        labels.push_back(a > 0 ? "p" : "n");
    }
    LabeledTable t = numeric_table(xs, labels);
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::bagging;
    cfg.ensemble_size = 1;
    cfg.seed = 77;
    auto ens = fit_ensemble(cfg, t);
    REQUIRE(ens->size() == 1);
    for (const Row& r : t.rows) {
        Prediction pe = ens->predict(r);
        Prediction pm = ens->member(0).predict(r);
        CHECK(pe.label == pm.label);
        CHECK(pe.scores[pe.label] == doctest::Approx(1.0));
    }
}

TEST_CASE("unanimous members give vote fraction 1.0") {
    LabeledTable t = numeric_table({{0.0}, {0.1}, {1.0}, {1.1}}, {"a", "a", "b", "b"});
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::bagging;
    cfg.ensemble_size = 7;
    cfg.seed = 3;
    auto ens = fit_ensemble(cfg, t);
    Prediction p = ens->predict(numeric_row({-0.5}));
    CHECK(p.scores[p.label] == doctest::Approx(1.0));
}

TEST_CASE("2:1 vote picks the majority label") {
    LabeledTable t = numeric_table({{0.0}, {1.0}}, {"a", "b"});
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::knn;
    cfg.k = 1;
    std::vector<std::unique_ptr<Classifier>> members;
    members.push_back(fit(cfg, numeric_table({{0.0}, {5.0}}, {"a", "b"})));
    members.push_back(fit(cfg, numeric_table({{0.0}, {5.0}}, {"a", "b"})));
    members.push_back(fit(cfg, numeric_table({{5.0}, {0.0}}, {"a", "b"})));
    auto vote = EnsembleModel::voting(std::move(members), {1.0, 1.0, 1.0}, 2);
    Prediction p = vote->predict(numeric_row({0.0}));
    CHECK(p.label == 0);  // two members say "a"
    CHECK(p.scores[0] == doctest::Approx(2.0 / 3));
}

TEST_CASE("adaboost accepted rounds all beat chance") {
    Rng rng(11);
    std::vector<std::vector<double>> xs;
    std::vector<std::string> labels;
    for (int i = 0; i < 40; ++i) {
        double a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
        xs.push_back({a, b});
        labels.push_back((a > 0) == (b > 0) ? "x" : "y");
    }
    LabeledTable t = numeric_table(xs, labels);
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::boosting;
    cfg.ensemble_size = 8;
    cfg.seed = 5;
    auto ens = fit_ensemble(cfg, t);
    for (double err : ens->round_errors()) CHECK(err < 0.5);
    CHECK(ens->size() >= 1);
}

TEST_CASE("boosting stops with a warning when the base cannot beat chance") {
    // identical rows with evenly conflicting labels
    LabeledTable t = numeric_table({{1.0}, {1.0}, {1.0}, {1.0}}, {"a", "a", "b", "b"});
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::boosting;
    cfg.ensemble_size = 5;
    auto ens = fit_ensemble(cfg, t);
    CHECK(ens->size() <= 1);
    REQUIRE(!ens->warnings().empty());
    CHECK(ens->warnings()[0].find("round 1") != std::string::npos);
    CHECK_NOTHROW(ens->predict(numeric_row({1.0})));
}

TEST_CASE("random forest draws feature subsets and stays deterministic") {
    Rng rng(51);
    std::vector<std::vector<double>> xs;
    std::vector<std::string> labels;
    for (int i = 0; i < 50; ++i) {
        std::vector<double> row;
        for (int f = 0; f < 9; ++f) row.push_back(rng.uniform(-1, 1));
        xs.push_back(row);
        labels.push_back(row[2] + row[5] > 0 ? "p" : "n");
    }
    LabeledTable t = numeric_table(xs, labels);
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::random_forest;
    cfg.ensemble_size = 11;
    cfg.seed = 99;
    auto a = fit_ensemble(cfg, t);
    auto b = fit_ensemble(cfg, t);
    for (const Row& r : t.rows) {
        Prediction pa = a->predict(r);
        Prediction pb = b->predict(r);
        CHECK(pa.label == pb.label);
        for (std::size_t c = 0; c < pa.scores.size(); ++c) CHECK(pa.scores[c] == pb.scores[c]);
    }
}

// ---- unified interface --------------------------------------------------------------

TEST_CASE("discriminative algorithms reject categorical-only tables") {
    LabeledTable w = weather_fixture();
    for (Algorithm a : {Algorithm::svm, Algorithm::rls, Algorithm::logistic_regression}) {
        ClassifierConfig cfg;
        cfg.algorithm = a;
        CHECK_THROWS_AS(fit(cfg, w), ConfigError);
    }
}

TEST_CASE("rls and svm classifier wrappers predict sensible labels") {
    LabeledTable t =
        numeric_table({{-1.0}, {-0.8}, {0.8}, {1.0}}, {"neg", "neg", "pos", "pos"});
    for (Algorithm a : {Algorithm::rls, Algorithm::svm}) {
        ClassifierConfig cfg;
        cfg.algorithm = a;
        cfg.kernel = KernelSpec::gaussian(1.0);
        auto m = fit(cfg, t);
        CHECK(m->predict(numeric_row({-0.9})).label == t.class_index("neg"));
        CHECK(m->predict(numeric_row({0.9})).label == t.class_index("pos"));
        Prediction p = m->predict(numeric_row({0.0}));
        double s = p.scores[0] + p.scores[1];
        CHECK(s == doctest::Approx(1.0));
    }
}

TEST_CASE("prediction argmax equals the reported label everywhere") {
    LabeledTable w = weather_fixture();
    for (Algorithm a : {Algorithm::knn, Algorithm::naive_bayes, Algorithm::decision_tree,
                        Algorithm::bagging}) {
        ClassifierConfig cfg;
        cfg.algorithm = a;
        auto m = fit(cfg, w);
        for (const Row& r : w.rows) {
            Prediction p = m->predict(r);
            CHECK(p.label == argmax_class(p.scores));
        }
    }
}

TEST_CASE("schema mismatch raises input error") {
    LabeledTable w = weather_fixture();
    ClassifierConfig cfg;
    cfg.algorithm = Algorithm::knn;
    auto m = fit(cfg, w);
    CHECK_THROWS_AS(m->predict(Row(2)), InputError);
}

TEST_CASE("fixed seed makes fit/predict bit-deterministic") {
    Rng rng(71);
    std::vector<std::vector<double>> xs;
    std::vector<std::string> labels;
    for (int i = 0; i < 24; ++i) {
        xs.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        labels.push_back(rng.uniform() < 0.5 ? "u" : "v");
    }
    LabeledTable t = numeric_table(xs, labels);
    for (Algorithm a : {Algorithm::bagging, Algorithm::boosting, Algorithm::random_forest}) {
        ClassifierConfig cfg;
        cfg.algorithm = a;
        cfg.ensemble_size = 5;
        cfg.seed = 1234;
        auto m1 = fit(cfg, t);
        auto m2 = fit(cfg, t);
        for (const Row& r : t.rows) {
            Prediction p1 = m1->predict(r);
            Prediction p2 = m2->predict(r);
            CHECK(p1.label == p2.label);
            for (std::size_t c = 0; c < p1.scores.size(); ++c)
                CHECK(p1.scores[c] == p2.scores[c]);
        }
    }
}
