#include "dti/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dti/parallel.hpp"

namespace dti {

PredictorMethod method_from_string(const std::string& s) {
    if (s == "bgm") return PredictorMethod::bgm;
    if (s == "blm") return PredictorMethod::blm;
    if (s == "blmn") return PredictorMethod::blmn;
    throw ConfigError("unknown method '" + s + "'");
}

std::string method_name(PredictorMethod m) {
    switch (m) {
        case PredictorMethod::bgm: return "bgm";
        case PredictorMethod::blm: return "blm";
        case PredictorMethod::blmn: return "blmn";
    }
    return "?";
}

ScoreMatrix loocv(const DtiDataset& ds, const PredictorConfig& cfg) {
    ds.validate();
    if (cfg.method == PredictorMethod::blm || cfg.method == PredictorMethod::blmn) {
        BlmParams params = cfg.blm;
        params.neighbor_inferring = cfg.method == PredictorMethod::blmn;
        return blm_loocv_sweep(ds, params, cfg.similarity, cfg.workers);
    }

    // BGM: a masked negative equals the unmasked dataset, so one global fit
    // covers all negative pairs; each positive is refit on its masked copy.
    DtiDataset global_ds = with_similarity(ds, cfg.similarity);
    ScoreMatrix sm = bgm_fit_predict(global_ds, cfg.bgm);
    sm.params_echo += " similarity=" + cfg.similarity.kind_name();

    std::vector<std::pair<std::size_t, std::size_t>> positives;
    for (std::size_t i = 0; i < ds.n_drugs(); ++i)
        for (std::size_t j = 0; j < ds.n_targets(); ++j)
            if (ds.interactions(i, j) != 0.0) positives.emplace_back(i, j);

    parallel_for(positives.size(), cfg.workers, [&](std::size_t p) {
        auto [i, j] = positives[p];
        try {
            DtiDataset masked = ds;
            masked.interactions(i, j) = 0.0;
            DtiDataset masked_sim = with_similarity(masked, cfg.similarity);
            ScoreMatrix one = bgm_fit_predict(masked_sim, cfg.bgm);
            sm.scores(i, j) = one.scores(i, j);
        } catch (const std::exception& e) {
            throw NumericError("loocv (pair drug=" + ds.drug_ids[i] + ", target=" +
                               ds.target_ids[j] + "): " + e.what());
        }
    });
    return sm;
}

ScoreMatrix predict_all(const DtiDataset& ds, const PredictorConfig& cfg) {
    ds.validate();
    if (cfg.method == PredictorMethod::bgm) {
        ScoreMatrix sm = bgm_fit_predict(with_similarity(ds, cfg.similarity), cfg.bgm);
        sm.params_echo += " similarity=" + cfg.similarity.kind_name() + " masking=off";
        return sm;
    }
    BlmParams params = cfg.blm;
    params.neighbor_inferring = cfg.method == PredictorMethod::blmn;
    return blm_score_matrix(ds, params, cfg.similarity, cfg.workers);
}

namespace {

struct RankedScores {
    // (score, is_positive) sorted by score descending
    std::vector<std::pair<double, bool>> items;
    std::size_t n_pos = 0, n_neg = 0;
};

RankedScores rank_scores(const ScoreMatrix& scores, const DenseMatrix& truth) {
    if (scores.scores.rows() != truth.rows() || scores.scores.cols() != truth.cols())
        throw InputError("roc_pr: score/truth dimension mismatch");
    RankedScores r;
    r.items.reserve(truth.size());
    for (std::size_t i = 0; i < truth.rows(); ++i)
        for (std::size_t j = 0; j < truth.cols(); ++j) {
            double s = scores.scores(i, j);
            if (!std::isfinite(s)) throw InputError("roc_pr: non-finite score");
            bool pos = truth(i, j) != 0.0;
            r.items.emplace_back(s, pos);
            (pos ? r.n_pos : r.n_neg)++;
        }
    if (r.n_pos == 0 || r.n_neg == 0)
        throw MetricError("roc_pr: need at least one positive and one negative");
    std::sort(r.items.begin(), r.items.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    return r;
}

}  // namespace

EvalReport roc_pr(const ScoreMatrix& scores, const DenseMatrix& truth, bool trapezoid_pr) {
    RankedScores r = rank_scores(scores, truth);
    EvalReport rep;
    rep.n_positives = r.n_pos;
    rep.n_pairs = r.items.size();
    rep.method_echo = scores.method.empty() ? "" : scores.method + " " + scores.params_echo;

    // Walk distinct thresholds; integer TP/FP keep the trapezoid sum exact,
    // so AUC agrees with the concordant-pair statistic to the last bit.
    unsigned long long tp = 0, fp = 0;
    unsigned long long auc_tw = 0;  // 2 * sum of trapezoid areas, in count units
    double ap = 0.0;                // average precision accumulator
    double pr_trap = 0.0;           // trapezoidal PR alternative
    double prev_prec = 1.0;
    std::size_t i = 0;
    while (i < r.items.size()) {
        double thr = r.items[i].first;
        unsigned long long dtp = 0, dfp = 0;
        while (i < r.items.size() && r.items[i].first == thr) {
            (r.items[i].second ? dtp : dfp)++;
            ++i;
        }
        unsigned long long tp_prev = tp;
        tp += dtp;
        fp += dfp;
        auc_tw += dfp * (tp_prev + tp);
        double prec = static_cast<double>(tp) / (tp + fp);
        if (dtp > 0) {
            ap += static_cast<double>(dtp) / r.n_pos * prec;
            pr_trap += static_cast<double>(dtp) / r.n_pos * 0.5 * (prev_prec + prec);
        }
        prev_prec = prec;
        CurvePoint pt;
        pt.threshold = thr;
        pt.tpr = static_cast<double>(tp) / r.n_pos;
        pt.fpr = static_cast<double>(fp) / r.n_neg;
        pt.precision = prec;
        rep.points.push_back(pt);
    }
    rep.auc = static_cast<double>(auc_tw) / (2.0 * r.n_pos * r.n_neg);
    rep.aupr = trapezoid_pr ? pr_trap : ap;
    return rep;
}

Confusion confusion_at(const ScoreMatrix& scores, const DenseMatrix& truth, double threshold) {
    if (scores.scores.rows() != truth.rows() || scores.scores.cols() != truth.cols())
        throw InputError("confusion_at: score/truth dimension mismatch");
    Confusion c;
    for (std::size_t i = 0; i < truth.rows(); ++i)
        for (std::size_t j = 0; j < truth.cols(); ++j) {
            bool pred = scores.scores(i, j) >= threshold;
            bool pos = truth(i, j) != 0.0;
            if (pred && pos) c.tp++;
            else if (pred && !pos) c.fp++;
            else if (!pred && !pos) c.tn++;
            else c.fn++;
        }
    c.tpr = c.tp + c.fn > 0 ? static_cast<double>(c.tp) / (c.tp + c.fn) : 0.0;
    c.fpr = c.fp + c.tn > 0 ? static_cast<double>(c.fp) / (c.fp + c.tn) : 0.0;
    c.precision = c.tp + c.fp > 0 ? static_cast<double>(c.tp) / (c.tp + c.fp) : 1.0;
    return c;
}

namespace {

void write_comment(std::ofstream& out, const std::string& header_comment) {
    if (!header_comment.empty()) {
        std::istringstream is(header_comment);
        std::string line;
        while (std::getline(is, line)) out << "# " << line << '\n';
    }
}

}  // namespace

void write_curve_points(const EvalReport& report, const std::string& path,
                        const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    write_comment(out, header_comment);
    out << "threshold\ttpr\tfpr\tprecision\n";
    char buf[160];
    for (const CurvePoint& p : report.points) {
        std::snprintf(buf, sizeof buf, "%.17g\t%.17g\t%.17g\t%.17g", p.threshold, p.tpr, p.fpr,
                      p.precision);
        out << buf << '\n';
    }
}

void write_eval_summary(const std::vector<SummaryRow>& rows, const std::string& path,
                        const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    write_comment(out, header_comment);
    out << "dataset\tsimilarity\tmethod\tauc_pct\taupr_pct\twall_seconds\n";
    char buf[80];
    for (const SummaryRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%.2f\t%.2f\t%.3f", r.auc_pct, r.aupr_pct, r.wall_seconds);
        out << r.dataset << '\t' << r.similarity << '\t' << r.method << '\t' << buf << '\n';
    }
}

}  // namespace dti
