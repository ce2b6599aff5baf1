#include "dti/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "dti/simd.hpp"

namespace dti {

SimilarityConfig::Kind SimilarityConfig::kind_from_string(const std::string& s) {
    if (s == "chem-seq" || s == "chem_seq") return Kind::chem_seq;
    if (s == "network" || s == "network-based") return Kind::network_based;
    if (s == "hybrid") return Kind::hybrid;
    throw ConfigError("unknown similarity kind '" + s + "'");
}

std::string SimilarityConfig::kind_name() const {
    switch (kind) {
        case Kind::chem_seq: return "chem-seq";
        case Kind::network_based: return "network";
        case Kind::hybrid: return "hybrid";
    }
    return "?";
}

void SimilarityConfig::validate() const {
    if (hybrid_weight < 0.0 || hybrid_weight > 1.0)
        throw ConfigError("hybrid weight must be in [0,1]");
    if (!(gip_bandwidth_scale > 0.0)) throw ConfigError("gip bandwidth scale must be > 0");
}

DenseMatrix network_similarity(const DenseMatrix& interactions, Side side, double gamma0) {
    if (!(gamma0 > 0.0)) throw ConfigError("network_similarity: gamma0 must be > 0");
    DenseMatrix profiles =
        side == Side::drugs ? interactions : interactions.transposed();
    const std::size_t n = profiles.rows(), len = profiles.cols();

    double sq_norm_total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sq_norm_total += simd::dot(profiles.row(i), profiles.row(i), len);
    if (sq_norm_total == 0.0)
        throw ConfigError("network_similarity: interaction matrix is all zero, "
                          "profile bandwidth is undefined");
    double gamma = gamma0 * n / sq_norm_total;

    DenseMatrix s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = std::exp(-gamma * simd::sqdist(profiles.row(i), profiles.row(j), len));
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

DenseMatrix combine(const DenseMatrix& sim_bio, const DenseMatrix& sim_net, double w) {
    if (sim_bio.rows() != sim_net.rows() || sim_bio.cols() != sim_net.cols())
        throw InputError("combine: dimension mismatch");
    if (w < 0.0 || w > 1.0) throw InputError("combine: weight must be in [0,1]");
    DenseMatrix out(sim_bio.rows(), sim_bio.cols());
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j)
            out(i, j) = w * sim_bio(i, j) + (1.0 - w) * sim_net(i, j);
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = i + 1; j < out.cols(); ++j) {
            double v = 0.5 * (out(i, j) + out(j, i));
            out(i, j) = v;
            out(j, i) = v;
        }
    return out;
}

DenseMatrix as_kernel(const DenseMatrix& s) {
    if (!s.square()) throw InputError("as_kernel: matrix must be square");
    return psd_repair(s);
}

DtiDataset with_similarity(const DtiDataset& ds, const SimilarityConfig& cfg) {
    cfg.validate();
    if (cfg.kind == SimilarityConfig::Kind::chem_seq) return ds;
    DtiDataset out = ds;
    DenseMatrix gip_d = network_similarity(ds.interactions, Side::drugs, cfg.gip_bandwidth_scale);
    DenseMatrix gip_t =
        network_similarity(ds.interactions, Side::targets, cfg.gip_bandwidth_scale);
    if (cfg.kind == SimilarityConfig::Kind::network_based) {
        out.drug_sim = std::move(gip_d);
        out.target_sim = std::move(gip_t);
    } else {
        out.drug_sim = combine(ds.drug_sim, gip_d, cfg.hybrid_weight);
        out.target_sim = combine(ds.target_sim, gip_t, cfg.hybrid_weight);
    }
    return out;
}

}  // namespace dti
