#pragma once

#include <string>

#include "dti/datasets.hpp"
#include "dti/linalg.hpp"

namespace dti {

enum class Side { drugs, targets };

// Which similarity feeds the local models: the loaded biological matrices,
// interaction-profile kernels, or a weighted blend of the two.
struct SimilarityConfig {
    enum class Kind { chem_seq, network_based, hybrid };
    Kind kind = Kind::chem_seq;
    double hybrid_weight = 0.5;        // weight on the chem/seq part
    double gip_bandwidth_scale = 1.0;  // gamma_0
    // When false the network similarity is computed once from the unmasked
    // interactions and reused across the whole LOOCV sweep (leaky; kept only
    // for comparison runs).
    bool per_mask_recompute = true;

    static Kind kind_from_string(const std::string& s);
    std::string kind_name() const;
    void validate() const;
    // True if the similarity matrices change when interactions change.
    bool depends_on_interactions() const { return kind != Kind::chem_seq; }
};

// Gaussian kernel over interaction profiles (rows for drugs, columns for
// targets): s_ij = exp(-gamma ||a_i - a_j||^2) with gamma = gamma_0 scaled by
// the mean squared profile norm.
DenseMatrix network_similarity(const DenseMatrix& interactions, Side side, double gamma0 = 1.0);

// w * sim_bio + (1-w) * sim_net, symmetrized.
DenseMatrix combine(const DenseMatrix& sim_bio, const DenseMatrix& sim_net, double w = 0.5);

// Similarity matrix as a kernel: PSD repair via eigenvalue clipping.
DenseMatrix as_kernel(const DenseMatrix& s);

// Dataset with drug_sim/target_sim replaced per the config (interactions and
// ids untouched).
DtiDataset with_similarity(const DtiDataset& ds, const SimilarityConfig& cfg);

}  // namespace dti
