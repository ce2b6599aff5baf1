#pragma once

#include <string>
#include <vector>

#include "dti/predictors.hpp"

namespace dti {

struct Confusion {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    double tpr = 0.0, fpr = 0.0, precision = 1.0;
};

struct CurvePoint {
    double threshold = 0.0;
    double tpr = 0.0;  // = recall
    double fpr = 0.0;
    double precision = 1.0;
};

struct EvalReport {
    double auc = 0.0;   // fraction, not percent
    double aupr = 0.0;  // average precision
    std::vector<CurvePoint> points;  // one per distinct threshold, descending
    std::size_t n_positives = 0;
    std::size_t n_pairs = 0;
    std::string method_echo;
};

enum class PredictorMethod { bgm, blm, blmn };

PredictorMethod method_from_string(const std::string& s);
std::string method_name(PredictorMethod m);

struct PredictorConfig {
    PredictorMethod method = PredictorMethod::blmn;
    BgmParams bgm;
    BlmParams blm;
    SimilarityConfig similarity;
    int workers = 1;
};

// Every entry of the returned matrix is predicted with that entry masked to
// zero first; a pair's own label is never visible to its own prediction.
ScoreMatrix loocv(const DtiDataset& ds, const PredictorConfig& cfg);

// Full-matrix scoring without masking (the `predict` command).
ScoreMatrix predict_all(const DtiDataset& ds, const PredictorConfig& cfg);

// Curves over every distinct score threshold; AUC by trapezoids over
// (FPR,TPR), which equals the rank statistic with ties counted 1/2; AUPR by
// average precision over recall steps (set trapezoid_pr for the trapezoidal
// PR alternative).
EvalReport roc_pr(const ScoreMatrix& scores, const DenseMatrix& truth, bool trapezoid_pr = false);

// Counts at one threshold: predicted positive iff score >= threshold.
// Precision with zero predicted positives is 1 by convention.
Confusion confusion_at(const ScoreMatrix& scores, const DenseMatrix& truth, double threshold);

// One row per threshold: threshold, tpr, fpr, precision.
void write_curve_points(const EvalReport& report, const std::string& path,
                        const std::string& header_comment);

struct SummaryRow {
    std::string dataset, similarity, method;
    double auc_pct = 0.0, aupr_pct = 0.0;
    double wall_seconds = 0.0;
};

void write_eval_summary(const std::vector<SummaryRow>& rows, const std::string& path,
                        const std::string& header_comment);

}  // namespace dti
