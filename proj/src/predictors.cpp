#include "dti/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <sstream>

#include "dti/parallel.hpp"
#include "dti/simd.hpp"

namespace dti {

void BgmParams::validate() const {
    if (!(bandwidth > 0.0)) throw ConfigError("bgm: bandwidth h must be > 0");
    if (!(ridge > 0.0)) throw ConfigError("bgm: ridge must be > 0");
}

std::string BgmParams::describe() const {
    std::ostringstream os;
    os << "h=" << bandwidth << " embedding_dim=" << embedding_dim << " ridge=" << ridge;
    return os.str();
}

void BlmParams::validate() const {
    if (local.algorithm != Algorithm::rls && local.algorithm != Algorithm::svm)
        throw ConfigError("blm: local classifier must be rls or svm");
    local.validate();
    if (infer_mode == InferMode::exponential && !(infer_beta > 0.0))
        throw ConfigError("blm: exponential inferring needs beta > 0");
    if (neighbor_threshold < 0.0 || neighbor_threshold >= 1.0)
        throw ConfigError("blm: neighbor threshold must be in [0,1)");
}

std::string BlmParams::describe() const {
    std::ostringstream os;
    os << "local=" << algorithm_name(local.algorithm);
    if (local.algorithm == Algorithm::rls) os << " delta=" << local.delta;
    if (local.algorithm == Algorithm::svm) os << " C=" << local.svm_c;
    os << " combine=" << (combine == Combine::max ? "max" : "mean")
       << " inferring=" << (neighbor_inferring ? "on" : "off");
    if (neighbor_inferring)
        os << " mode=" << (infer_mode == InferMode::linear ? "linear" : "exponential")
           << " beta=" << infer_beta << " threshold=" << neighbor_threshold;
    return os.str();
}

// ---- bipartite graph model ---------------------------------------------------

BgmEmbedding bgm_graph_embedding(const DtiDataset& ds, const BgmParams& params) {
    params.validate();
    BgmEmbedding emb;
    for (std::size_t i = 0; i < ds.n_drugs(); ++i)
        if (ds.drug_degree(i) > 0) emb.graph_drugs.push_back(i);
    for (std::size_t j = 0; j < ds.n_targets(); ++j)
        if (ds.target_degree(j) > 0) emb.graph_targets.push_back(j);
    const std::size_t md = emb.graph_drugs.size(), mt = emb.graph_targets.size();
    const std::size_t m = md + mt;
    if (m == 0) throw InputError("bgm: interaction graph is empty");

    // adjacency over graph nodes: drugs [0,md), targets [md,m)
    std::vector<std::vector<std::size_t>> adj(m);
    for (std::size_t a = 0; a < md; ++a)
        for (std::size_t b = 0; b < mt; ++b)
            if (ds.interactions(emb.graph_drugs[a], emb.graph_targets[b]) != 0.0) {
                adj[a].push_back(md + b);
                adj[md + b].push_back(a);
            }

    // all-pairs shortest path by BFS; -1 = unreachable
    std::vector<std::vector<int>> dist(m, std::vector<int>(m, -1));
    for (std::size_t s = 0; s < m; ++s) {
        auto& d = dist[s];
        d[s] = 0;
        std::deque<std::size_t> q{s};
        while (!q.empty()) {
            std::size_t u = q.front();
            q.pop_front();
            for (std::size_t v : adj[u])
                if (d[v] < 0) {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
        }
    }

    double h2 = params.bandwidth * params.bandwidth;
    DenseMatrix k(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            k(a, b) = dist[a][b] < 0
                          ? 0.0  // disconnected: the d -> inf limit of the kernel
                          : std::exp(-double(dist[a][b]) * dist[a][b] / h2);

    EigenDecomposition e = sym_eigen(k);
    std::size_t keep = 0;
    for (double v : e.values)
        if (v > 0.0) ++keep;
    if (params.embedding_dim > 0) keep = std::min(keep, params.embedding_dim);

    emb.kernel = DenseMatrix(m, m, 0.0);
    for (std::size_t c = 0; c < e.values.size(); ++c) {
        double lam = std::max(e.values[c], 0.0);
        if (lam == 0.0) continue;
        for (std::size_t a = 0; a < m; ++a) {
            double g = lam * e.vectors(a, c);
            for (std::size_t b = a; b < m; ++b) emb.kernel(a, b) += g * e.vectors(b, c);
        }
    }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < a; ++b) emb.kernel(a, b) = emb.kernel(b, a);

    emb.embedding = DenseMatrix(m, keep);
    for (std::size_t c = 0; c < keep; ++c) {
        double s = std::sqrt(e.values[c]);
        for (std::size_t a = 0; a < m; ++a) emb.embedding(a, c) = s * e.vectors(a, c);
    }
    return emb;
}

namespace {

// Multi-output ridge: W = (X^T X + ridge I)^{-1} X^T Y, then maps every
// similarity row through W.
DenseMatrix ridge_map(const DenseMatrix& sim, const std::vector<std::size_t>& graph_nodes,
                      const DenseMatrix& u, std::size_t u_offset, std::size_t u_count,
                      double ridge) {
    const std::size_t g = graph_nodes.size();
    const std::size_t dim = u.cols();
    DenseMatrix x(g, g);
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b) x(a, b) = sim(graph_nodes[a], graph_nodes[b]);

    DenseMatrix xtx = multiply(x.transposed(), x);
    for (std::size_t a = 0; a < g; ++a) xtx(a, a) += ridge;
    DenseMatrix chol = cholesky_factor(xtx);

    DenseMatrix w(g, dim);
    std::vector<double> rhs(g);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t a = 0; a < g; ++a) {
            double s = 0.0;
            for (std::size_t r = 0; r < g; ++r) s += x(r, a) * u(u_offset + r, c);
            rhs[a] = s;
        }
        std::vector<double> col = cholesky_solve(chol, rhs);
        for (std::size_t a = 0; a < g; ++a) w(a, c) = col[a];
    }

    // map every node (graph member or not) through its similarity row
    DenseMatrix mapped(u_count, dim, 0.0);
    std::vector<double> srow(g);
    for (std::size_t i = 0; i < u_count; ++i) {
        for (std::size_t a = 0; a < g; ++a) srow[a] = sim(i, graph_nodes[a]);
        for (std::size_t c = 0; c < dim; ++c) {
            double s = 0.0;
            for (std::size_t a = 0; a < g; ++a) s += srow[a] * w(a, c);
            mapped(i, c) = s;
        }
    }
    return mapped;
}

}  // namespace

ScoreMatrix bgm_fit_predict(const DtiDataset& ds, const BgmParams& params) {
    BgmEmbedding emb = bgm_graph_embedding(ds, params);
    const std::size_t md = emb.graph_drugs.size();

    DenseMatrix u_drugs =
        ridge_map(ds.drug_sim, emb.graph_drugs, emb.embedding, 0, ds.n_drugs(), params.ridge);
    DenseMatrix u_targets = ridge_map(ds.target_sim, emb.graph_targets, emb.embedding, md,
                                      ds.n_targets(), params.ridge);

    ScoreMatrix sm;
    sm.method = "bgm";
    sm.params_echo = params.describe();
    sm.scores = DenseMatrix(ds.n_drugs(), ds.n_targets());
    for (std::size_t i = 0; i < ds.n_drugs(); ++i)
        for (std::size_t j = 0; j < ds.n_targets(); ++j)
            sm.scores(i, j) = simd::dot(u_drugs.row(i), u_targets.row(j), u_drugs.cols());
    return sm;
}

// ---- bipartite local model -----------------------------------------------------

namespace {

// Local models over one side's kernel. score_all trains on a label vector
// and returns scores for every candidate of that side.
struct LocalSide {
    DenseMatrix kernel;  // psd-repaired similarity
    DenseMatrix chol;    // cholesky(kernel + delta I), rls only
    ClassifierConfig cfg;

    void build(const DenseMatrix& sim, const ClassifierConfig& local_cfg) {
        cfg = local_cfg;
        kernel = as_kernel(sim);
        if (cfg.algorithm == Algorithm::rls) {
            DenseMatrix a = kernel;
            for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += cfg.delta;
            chol = cholesky_factor(a);
        }
    }

    std::vector<double> score_all(const std::vector<double>& labels) const {
        const std::size_t n = kernel.rows();
        if (cfg.algorithm == Algorithm::rls) {
            std::vector<double> c = cholesky_solve(chol, labels);
            std::vector<double> out(n);
            for (std::size_t j = 0; j < n; ++j) out[j] = simd::dot(kernel.row(j), c.data(), n);
            return out;
        }
        // svm: binarize soft labels at 0.5
        std::vector<int> y(n);
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = labels[i] >= 0.5 ? 1 : -1;
            (y[i] == 1 ? pos : neg) = true;
        }
        if (!pos || !neg) return std::vector<double>(n, pos ? 1.0 : -1.0);
        SvmDual dual = svm_fit(kernel, y, cfg.svm_c, cfg.svm_kkt_tol, cfg.svm_max_passes);
        std::vector<double> out(n, dual.bias);
        for (std::size_t l = 0; l < n; ++l)
            if (dual.alpha[l] != 0.0)
                simd::axpy(dual.alpha[l] * y[l], kernel.row(l), out.data(), n);
        return out;
    }
};

struct BlmContext {
    LocalSide over_targets;  // drug-side models train on this
    LocalSide over_drugs;    // target-side models train on this

    BlmContext(const DtiDataset& ds, const BlmParams& params) {
        over_targets.build(ds.target_sim, params.local);
        over_drugs.build(ds.drug_sim, params.local);
    }
};

bool all_zero(const std::vector<double>& v) {
    for (double x : v)
        if (x != 0.0) return false;
    return true;
}

double combine_sides(const BlmParams& params, double d_side, double t_side) {
    return params.combine == BlmParams::Combine::max ? std::max(d_side, t_side)
                                                     : 0.5 * (d_side + t_side);
}

// Labels for one side; profile inference kicks in only when the masked
// profile is entirely empty.
std::vector<double> side_labels(const DtiDataset& ds, Side side, std::size_t index,
                                const BlmParams& params, bool* empty) {
    std::vector<double> y = side == Side::drugs
                                ? std::vector<double>(ds.interactions.row(index),
                                                      ds.interactions.row(index) + ds.n_targets())
                                : ds.interactions.column(index);
    *empty = false;
    if (!all_zero(y)) return y;
    if (params.neighbor_inferring) {
        y = infer_profile(ds, side, index, params.infer_mode, params.infer_beta,
                          params.neighbor_threshold);
        if (!all_zero(y)) return y;
    }
    *empty = true;
    return y;
}

PairScore score_pair(const DtiDataset& ds, const BlmContext& ctx, std::size_t i, std::size_t j,
                     const BlmParams& params) {
    PairScore ps;
    std::vector<double> y = side_labels(ds, Side::drugs, i, params, &ps.drug_side_empty);
    if (!ps.drug_side_empty) ps.drug_side = ctx.over_targets.score_all(y)[j];
    y = side_labels(ds, Side::targets, j, params, &ps.target_side_empty);
    if (!ps.target_side_empty) ps.target_side = ctx.over_drugs.score_all(y)[i];
    ps.value = combine_sides(params, ps.drug_side, ps.target_side);
    return ps;
}

}  // namespace

PairScore blm_predict_pair(const DtiDataset& ds, std::size_t i, std::size_t j,
                           const BlmParams& params) {
    params.validate();
    if (i >= ds.n_drugs() || j >= ds.n_targets())
        throw InputError("blm_predict_pair: pair index out of range");
    BlmContext ctx(ds, params);
    return score_pair(ds, ctx, i, j, params);
}

std::vector<double> infer_profile(const DtiDataset& ds, Side side, std::size_t index,
                                  BlmParams::InferMode mode, double beta, double threshold) {
    if (mode == BlmParams::InferMode::exponential && !(beta > 0.0))
        throw ConfigError("infer_profile: beta must be > 0");
    const DenseMatrix& sim = side == Side::drugs ? ds.drug_sim : ds.target_sim;
    const std::size_t n = sim.rows();
    const std::size_t len = side == Side::drugs ? ds.n_targets() : ds.n_drugs();
    if (index >= n) throw InputError("infer_profile: index out of range");

    std::vector<double> l(len, 0.0);
    for (std::size_t h = 0; h < n; ++h) {
        double s = sim(index, h);
        double w;
        if (mode == BlmParams::InferMode::linear) {
            if (s < threshold) continue;
            w = s;
        } else {
            w = std::exp(s / beta);
        }
        if (w == 0.0) continue;
        if (side == Side::drugs) {
            simd::axpy(w, ds.interactions.row(h), l.data(), len);
        } else {
            for (std::size_t t = 0; t < len; ++t) l[t] += w * ds.interactions(t, h);
        }
    }

    auto [mn_it, mx_it] = std::minmax_element(l.begin(), l.end());
    double mn = *mn_it, mx = *mx_it;
    if (mx - mn <= 0.0) return std::vector<double>(len, 0.0);
    for (double& v : l) v = (v - mn) / (mx - mn);
    return l;
}

namespace {

std::string sweep_echo(const BlmParams& params, const SimilarityConfig& sim) {
    std::ostringstream os;
    os << params.describe() << " similarity=" << sim.kind_name();
    if (sim.kind == SimilarityConfig::Kind::hybrid) os << " w=" << sim.hybrid_weight;
    if (sim.kind != SimilarityConfig::Kind::chem_seq)
        os << " gamma0=" << sim.gip_bandwidth_scale
           << " per_mask=" << (sim.per_mask_recompute ? "on" : "off");
    return os.str();
}

}  // namespace

ScoreMatrix blm_loocv_sweep(const DtiDataset& ds, const BlmParams& params,
                            const SimilarityConfig& sim, int workers) {
    params.validate();
    sim.validate();
    const std::size_t nd = ds.n_drugs(), nt = ds.n_targets();

    ScoreMatrix sm;
    sm.method = params.neighbor_inferring ? "blmn" : "blm";
    sm.params_echo = sweep_echo(params, sim);
    sm.scores = DenseMatrix(nd, nt);

    // Masking a zero entry changes nothing, so every negative pair shares the
    // unmasked dataset and its kernels; only positive pairs need a fresh
    // masked view (and, for interaction-derived similarities, fresh kernels).
    DtiDataset global_ds = with_similarity(ds, sim);
    BlmContext global_ctx(global_ds, params);

    DenseMatrix drug_side(nd, nt), target_side(nd, nt);
    std::vector<bool> drug_empty(nd, false), target_empty(nt, false);

    auto wrap = [&](const char* where, std::size_t i, std::size_t j, const auto& body) {
        std::string at = std::string(where) + " (pair drug=" + ds.drug_ids[i] +
                         ", target=" + ds.target_ids[j] + "): ";
        try {
            body();
        } catch (const ConfigError& e) {
            throw ConfigError(at + e.what());
        } catch (const InputError& e) {
            throw InputError(at + e.what());
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(at + e.what(), e.last_iterate);
        } catch (const std::exception& e) {
            throw NumericError(at + e.what());
        }
    };

    parallel_for(nd, workers, [&](std::size_t i) {
        bool empty = false;
        std::vector<double> y = side_labels(global_ds, Side::drugs, i, params, &empty);
        drug_empty[i] = empty;
        if (!empty) {
            std::vector<double> s = global_ctx.over_targets.score_all(y);
            std::copy(s.begin(), s.end(), drug_side.row(i));
        }
    });
    parallel_for(nt, workers, [&](std::size_t j) {
        bool empty = false;
        std::vector<double> y = side_labels(global_ds, Side::targets, j, params, &empty);
        target_empty[j] = empty;
        if (!empty) {
            std::vector<double> s = global_ctx.over_drugs.score_all(y);
            for (std::size_t i = 0; i < nd; ++i) target_side(i, j) = s[i];
        }
    });
    for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t j = 0; j < nt; ++j)
            sm.scores(i, j) = combine_sides(params, drug_empty[i] ? 0.0 : drug_side(i, j),
                                            target_empty[j] ? 0.0 : target_side(i, j));

    std::vector<std::pair<std::size_t, std::size_t>> positives;
    for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t j = 0; j < nt; ++j)
            if (ds.interactions(i, j) != 0.0) positives.emplace_back(i, j);

    bool fresh_kernels = sim.depends_on_interactions() && sim.per_mask_recompute;
    parallel_for(positives.size(), workers, [&](std::size_t p) {
        auto [i, j] = positives[p];
        wrap("loocv", i, j, [&] {
            DtiDataset masked = ds;
            masked.interactions(i, j) = 0.0;
            if (fresh_kernels) {
                DtiDataset masked_sim = with_similarity(masked, sim);
                BlmContext ctx(masked_sim, params);
                sm.scores(i, j) = score_pair(masked_sim, ctx, i, j, params).value;
            } else {
                masked.drug_sim = global_ds.drug_sim;
                masked.target_sim = global_ds.target_sim;
                sm.scores(i, j) = score_pair(masked, global_ctx, i, j, params).value;
            }
        });
    });
    return sm;
}

ScoreMatrix blmn_predict_all(const DtiDataset& ds, BlmParams params, const SimilarityConfig& sim,
                             int workers) {
    params.neighbor_inferring = true;
    return blm_loocv_sweep(ds, params, sim, workers);
}

ScoreMatrix blm_score_matrix(const DtiDataset& ds, const BlmParams& params,
                             const SimilarityConfig& sim, int workers) {
    params.validate();
    sim.validate();
    const std::size_t nd = ds.n_drugs(), nt = ds.n_targets();
    DtiDataset full = with_similarity(ds, sim);
    BlmContext ctx(full, params);

    ScoreMatrix sm;
    sm.method = params.neighbor_inferring ? "blmn" : "blm";
    sm.params_echo = sweep_echo(params, sim) + " masking=off";
    sm.scores = DenseMatrix(nd, nt);

    DenseMatrix drug_side(nd, nt), target_side(nd, nt);
    std::vector<bool> drug_empty(nd, false), target_empty(nt, false);
    parallel_for(nd, workers, [&](std::size_t i) {
        bool empty = false;
        std::vector<double> y = side_labels(full, Side::drugs, i, params, &empty);
        drug_empty[i] = empty;
        if (!empty) {
            std::vector<double> s = ctx.over_targets.score_all(y);
            std::copy(s.begin(), s.end(), drug_side.row(i));
        }
    });
    parallel_for(nt, workers, [&](std::size_t j) {
        bool empty = false;
        std::vector<double> y = side_labels(full, Side::targets, j, params, &empty);
        target_empty[j] = empty;
        if (!empty) {
            std::vector<double> s = ctx.over_drugs.score_all(y);
            for (std::size_t i = 0; i < nd; ++i) target_side(i, j) = s[i];
        }
    });
    for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t j = 0; j < nt; ++j)
            sm.scores(i, j) = combine_sides(params, drug_empty[i] ? 0.0 : drug_side(i, j),
                                            target_empty[j] ? 0.0 : target_side(i, j));
    return sm;
}

// ---- pair features --------------------------------------------------------------

std::vector<double> pair_features(const DtiDataset& ds, std::size_t i, std::size_t j,
                                  Aggregation agg, bool include_network_sources,
                                  std::vector<std::string>* warnings) {
    if (i >= ds.n_drugs() || j >= ds.n_targets())
        throw InputError("pair_features: pair index out of range");

    std::vector<const DenseMatrix*> drug_sims{&ds.drug_sim};
    std::vector<const DenseMatrix*> target_sims{&ds.target_sim};
    DenseMatrix gip_d, gip_t;
    if (include_network_sources) {
        gip_d = network_similarity(ds.interactions, Side::drugs);
        gip_t = network_similarity(ds.interactions, Side::targets);
        drug_sims.push_back(&gip_d);
        target_sims.push_back(&gip_t);
    }

    std::vector<std::pair<std::size_t, std::size_t>> known;
    for (std::size_t d = 0; d < ds.n_drugs(); ++d)
        for (std::size_t t = 0; t < ds.n_targets(); ++t)
            if (ds.interactions(d, t) != 0.0 && !(d == i && t == j)) known.emplace_back(d, t);

    std::vector<double> feats;
    feats.reserve(drug_sims.size() * target_sims.size());
    if (known.empty()) {
        if (warnings)
            warnings->push_back("pair_features: no known interactions besides the query pair");
        feats.assign(drug_sims.size() * target_sims.size(), 0.0);
        return feats;
    }

    for (const DenseMatrix* sd : drug_sims) {
        for (const DenseMatrix* st : target_sims) {
            double acc = agg == Aggregation::max ? 0.0 : 0.0;
            for (auto [d, t] : known) {
                double v = std::sqrt((*sd)(i, d) * (*st)(j, t));
                if (agg == Aggregation::max)
                    acc = std::max(acc, v);
                else
                    acc += v;
            }
            if (agg == Aggregation::mean) acc /= known.size();
            feats.push_back(acc);
        }
    }
    return feats;
}

// ---- output ----------------------------------------------------------------------

namespace {

void write_comment(std::ofstream& out, const std::string& header_comment) {
    if (!header_comment.empty()) {
        std::istringstream is(header_comment);
        std::string line;
        while (std::getline(is, line)) out << "# " << line << '\n';
    }
}

}  // namespace

void write_score_matrix(const ScoreMatrix& sm, const DtiDataset& ds, const std::string& path,
                        const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    write_comment(out, header_comment);
    for (const auto& t : ds.target_ids) out << '\t' << t;
    out << '\n';
    char buf[40];
    for (std::size_t i = 0; i < ds.n_drugs(); ++i) {
        out << ds.drug_ids[i];
        for (std::size_t j = 0; j < ds.n_targets(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", sm.scores(i, j));
            out << '\t' << buf;
        }
        out << '\n';
    }
}

void write_score_matrix_long(const ScoreMatrix& sm, const DtiDataset& ds, const std::string& path,
                             const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    write_comment(out, header_comment);
    out << "drug\ttarget\tscore\tknown_label\n";
    char buf[40];
    for (std::size_t i = 0; i < ds.n_drugs(); ++i)
        for (std::size_t j = 0; j < ds.n_targets(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", sm.scores(i, j));
            out << ds.drug_ids[i] << '\t' << ds.target_ids[j] << '\t' << buf << '\t'
                << (ds.interactions(i, j) != 0.0 ? 1 : 0) << '\n';
        }
}

}  // namespace dti
