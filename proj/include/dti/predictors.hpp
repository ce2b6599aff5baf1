#pragma once

#include <string>
#include <vector>

#include "dti/classifiers.hpp"
#include "dti/datasets.hpp"
#include "dti/similarity.hpp"

namespace dti {

struct ScoreMatrix {
    DenseMatrix scores;  // n_d x n_t
    std::string method;
    std::string params_echo;
};

struct BgmParams {
    double bandwidth = 1.0;         // h in exp(-d^2/h^2) over graph distances
    std::size_t embedding_dim = 0;  // 0 = keep every nonnegative component
    double ridge = 1e-6;            // similarity-to-embedding regression

    void validate() const;
    std::string describe() const;
};

struct BlmParams {
    enum class Combine { max, mean };
    enum class InferMode { linear, exponential };

    ClassifierConfig local;  // local model: rls (default, delta=1) or svm
    Combine combine = Combine::max;
    bool neighbor_inferring = false;  // BLMN when true
    InferMode infer_mode = InferMode::linear;
    double infer_beta = 1.0;          // bandwidth of the exponential weights
    double neighbor_threshold = 0.0;  // linear mode: similarities below are zeroed

    BlmParams() {
        local.algorithm = Algorithm::rls;
        local.delta = 1.0;
    }

    void validate() const;
    std::string describe() const;
};

struct PairScore {
    double value = 0.0;
    double drug_side = 0.0;
    double target_side = 0.0;
    bool drug_side_empty = false;    // no positive training data on the drug side
    bool target_side_empty = false;  // same, target side
    bool no_training_data() const { return drug_side_empty && target_side_empty; }
};

// ---- bipartite graph model -----------------------------------------------------

// Embeds interacting drugs/targets into a shared space via a shortest-path
// graph kernel, ridge-regresses the embedding onto similarity rows, maps
// every drug/target through the regression, and scores pairs by inner
// product.
ScoreMatrix bgm_fit_predict(const DtiDataset& ds, const BgmParams& params);

// Exposed for the reconstruction check: the graph kernel over interacting
// nodes (drugs first, then targets) and its PSD embedding.
struct BgmEmbedding {
    std::vector<std::size_t> graph_drugs, graph_targets;
    DenseMatrix kernel;           // psd-repaired graph kernel
    DenseMatrix embedding;        // U with U U^T ~= kernel
};
BgmEmbedding bgm_graph_embedding(const DtiDataset& ds, const BgmParams& params);

// ---- bipartite local model -------------------------------------------------------

// Scores one pair from a dataset whose (i,j) entry the caller already
// masked. Trains the drug-side local model on row i over the target kernel
// and the target-side model on column j over the drug kernel, then combines.
PairScore blm_predict_pair(const DtiDataset& ds, std::size_t i, std::size_t j,
                           const BlmParams& params);

// Weighted interaction profile for a node with no (remaining) interactions,
// inferred from its neighbors' profiles; min-max rescaled to [0,1] with
// constant vectors mapping to zeros.
std::vector<double> infer_profile(const DtiDataset& ds, Side side, std::size_t index,
                                  BlmParams::InferMode mode, double beta, double threshold);

// Full leave-one-out sweep: every entry of the returned matrix is predicted
// with that entry masked. neighbor_inferring=false gives classic BLM,
// true gives BLMN. The similarity config decides which matrices feed the
// local models; network-derived similarities are recomputed from the masked
// interactions unless the config disables that.
ScoreMatrix blm_loocv_sweep(const DtiDataset& ds, const BlmParams& params,
                            const SimilarityConfig& sim, int workers = 1);

ScoreMatrix blmn_predict_all(const DtiDataset& ds, BlmParams params,
                             const SimilarityConfig& sim, int workers = 1);

// No masking: trains on the interactions as given and scores every pair
// (the `predict` command).
ScoreMatrix blm_score_matrix(const DtiDataset& ds, const BlmParams& params,
                             const SimilarityConfig& sim, int workers = 1);

// ---- pair features ----------------------------------------------------------------

enum class Aggregation { max, mean };

// One feature per (drug-similarity, target-similarity) source pair:
// aggregate over known interactions (d',t') != (i,j) of
// sqrt(S_d(i,d') * S_t(j,t')). With include_network_sources the
// interaction-profile kernels join the loaded similarities, giving four
// features instead of one.
std::vector<double> pair_features(const DtiDataset& ds, std::size_t i, std::size_t j,
                                  Aggregation agg, bool include_network_sources = false,
                                  std::vector<std::string>* warnings = nullptr);

// ---- output -----------------------------------------------------------------------

// Wide TSV: drug ids as rows, target ids as columns, full precision.
void write_score_matrix(const ScoreMatrix& sm, const DtiDataset& ds, const std::string& path,
                        const std::string& header_comment);
// Long TSV: drug, target, score, known_label.
void write_score_matrix_long(const ScoreMatrix& sm, const DtiDataset& ds, const std::string& path,
                             const std::string& header_comment);

}  // namespace dti
