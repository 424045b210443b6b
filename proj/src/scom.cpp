#include "umstm/scom.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

namespace umstm {

namespace {

struct GroupAcc {
    double min = std::numeric_limits<double>::infinity();
    std::vector<Topic> co;  // topics at the current minimum
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t count = 0;

    void add(Topic t, double v) {
        sum += v;
        sumsq += v * v;
        ++count;
        if (v < min) {
            min = v;
            co.clear();
            co.push_back(t);
        } else if (v == min) {
            co.push_back(t);
        }
    }

    void merge(const GroupAcc& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        count += o.count;
        if (o.min < min) {
            min = o.min;
            co = o.co;
        } else if (o.min == min) {
            co.insert(co.end(), o.co.begin(), o.co.end());
        }
    }
};

// Shard the topic list into a fixed number of chunks so that merge order,
// and therefore every floating-point sum, is independent of worker count.
constexpr std::size_t kChunks = 64;

}  // namespace

std::vector<ChampionRecord> local_champions(const Document& doc, const DistanceMatrix& matrix,
                                            const CandidateTopicSet& candidates,
                                            const NormalizationTable& table,
                                            const ScoreConfig& cfg, int workers) {
    const std::vector<Topic>& topics = candidates.topics();
    if (topics.empty()) throw DataError("empty candidate topic set");

    std::vector<std::map<int, GroupAcc>> chunk_accs(kChunks);
    const std::size_t per = (topics.size() + kChunks - 1) / kChunks;

    auto run_chunk = [&](std::size_t ci) {
        std::size_t lo = ci * per, hi = std::min(topics.size(), lo + per);
        auto& accs = chunk_accs[ci];
        for (std::size_t i = lo; i < hi; ++i) {
            Topic t = topics[i];
            double v = document_topic_distance(doc, t, matrix, table, cfg);
            accs[t.length()].add(t, v);
        }
    };

    if (workers <= 1) {
        for (std::size_t ci = 0; ci < kChunks; ++ci) run_chunk(ci);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t ci = next.fetch_add(1); ci < kChunks; ci = next.fetch_add(1)) {
                    run_chunk(ci);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    std::map<int, GroupAcc> merged;
    for (const auto& accs : chunk_accs) {
        for (const auto& [len, acc] : accs) merged[len].merge(acc);
    }

    std::vector<ChampionRecord> records;
    for (auto& [len, acc] : merged) {
        ChampionRecord r;
        r.length = len;
        std::sort(acc.co.begin(), acc.co.end(), topic_less);
        acc.co.erase(std::unique(acc.co.begin(), acc.co.end()), acc.co.end());
        r.champion = acc.co.front();
        r.co_champions = acc.co;
        r.distance = acc.min;
        r.group_mean = acc.sum / static_cast<double>(acc.count);
        double var = acc.sumsq / static_cast<double>(acc.count) - r.group_mean * r.group_mean;
        r.group_sd = std::sqrt(std::max(var, 0.0));
        if (r.group_sd > 0.0) r.z = (r.distance - r.group_mean) / r.group_sd;
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

// Least-squares polynomial fit with x rescaled to [-1, 1]. Coefficients are
// reported in the original x, lowest power first.
struct PolyFit {
    std::vector<double> coeffs;
    double x_mid = 0.0;
    double x_half = 1.0;

    double eval(double x) const {
        double t = (x - x_mid) / x_half;
        double v = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
        return v;
    }
};

PolyFit polyfit(const std::vector<double>& xs, const std::vector<double>& ys, int degree) {
    const std::size_t n = xs.size();
    double lo = *std::min_element(xs.begin(), xs.end());
    double hi = *std::max_element(xs.begin(), xs.end());
    PolyFit fit;
    fit.x_mid = (lo + hi) / 2.0;
    fit.x_half = hi > lo ? (hi - lo) / 2.0 : 1.0;

    const int m = degree + 1;
    std::vector<double> ata(static_cast<std::size_t>(m) * m, 0.0), atb(m, 0.0);
    std::vector<double> pows(m);
    for (std::size_t s = 0; s < n; ++s) {
        double t = (xs[s] - fit.x_mid) / fit.x_half;
        pows[0] = 1.0;
        for (int i = 1; i < m; ++i) pows[i] = pows[i - 1] * t;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) ata[i * m + j] += pows[i] * pows[j];
            atb[i] += pows[i] * ys[s];
        }
    }
    // Gaussian elimination with partial pivoting.
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(ata[r * m + col]) > std::abs(ata[piv * m + col])) piv = r;
        }
        if (piv != col) {
            for (int j = 0; j < m; ++j) std::swap(ata[col * m + j], ata[piv * m + j]);
            std::swap(atb[col], atb[piv]);
        }
        double d = ata[col * m + col];
        if (d == 0.0) throw DataError("singular system in polynomial fit");
        for (int r = 0; r < m; ++r) {
            if (r == col) continue;
            double f = ata[r * m + col] / d;
            for (int j = col; j < m; ++j) ata[r * m + j] -= f * ata[col * m + j];
            atb[r] -= f * atb[col];
        }
    }
    fit.coeffs.resize(m);
    for (int i = 0; i < m; ++i) fit.coeffs[i] = atb[i] / ata[i * m + i];
    return fit;
}

// Leave-one-out cross-validation error; lower is better.
double loocv_error(const std::vector<double>& xs, const std::vector<double>& ys, int degree) {
    double err = 0.0;
    for (std::size_t held = 0; held < xs.size(); ++held) {
        std::vector<double> tx, ty;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i == held) continue;
            tx.push_back(xs[i]);
            ty.push_back(ys[i]);
        }
        PolyFit f = polyfit(tx, ty, degree);
        double d = f.eval(xs[held]) - ys[held];
        err += d * d;
    }
    return err / static_cast<double>(xs.size());
}

}  // namespace

ScomResult scom_curve_fitting(const Document& doc, const UnderstandingMap& map,
                              const DistanceMatrix& matrix, const CandidateTopicSet& candidates,
                              const NormalizationTable& table, const MethodConfig& cfg) {
    (void)map;
    ScoreConfig dist_cfg;
    dist_cfg.mode = cfg.curve_use_phi ? ScoreMode::Normalized : ScoreMode::Raw;
    dist_cfg.power = cfg.power;

    ScomResult result;
    result.method = "curve";
    result.champions = local_champions(doc, matrix, candidates, table, dist_cfg, cfg.workers);

    std::vector<double> xs, ys;
    for (auto& r : result.champions) {
        switch (cfg.curve_score) {
            case CurveScore::ZScore:
                if (r.group_sd == 0.0) {
                    r.excluded = true;
                    r.exclusion_reason = "zero group SD";
                    continue;
                }
                r.score = r.z;
                break;
            case CurveScore::Raw:
                r.score = r.distance;
                break;
            case CurveScore::Log:
                if (r.distance <= 0.0) {
                    r.excluded = true;
                    r.exclusion_reason = "zero champion distance";
                    continue;
                }
                r.score = std::log(r.distance);
                break;
        }
        xs.push_back(static_cast<double>(r.length));
        ys.push_back(r.score);
    }
    if (xs.size() < 3) {
        throw InsufficientGroups("curve fitting needs at least 3 usable length groups, have " +
                                 std::to_string(xs.size()));
    }

    // Degree by leave-one-out cross-validation, lowest degree on ties. The
    // grid is clipped so every held-out fold remains overdetermined.
    int best_degree = -1;
    double best_err = std::numeric_limits<double>::infinity();
    for (int deg : cfg.degree_grid) {
        if (deg < 1 || static_cast<std::size_t>(deg) + 2 > xs.size()) continue;
        double err = loocv_error(xs, ys, deg);
        if (err < best_err) {
            best_err = err;
            best_degree = deg;
        }
    }
    if (best_degree < 0) best_degree = 1;
    PolyFit fit = polyfit(xs, ys, best_degree);
    result.curve_degree = best_degree;
    result.curve_coeffs = fit.coeffs;

    const ChampionRecord* best = nullptr;
    for (auto& r : result.champions) {
        if (r.excluded) continue;
        r.fitted = fit.eval(static_cast<double>(r.length));
        r.margin = r.score - r.fitted;
        if (!best || r.margin < best->margin ||
            (r.margin == best->margin && topic_less(r.champion, best->champion))) {
            best = &r;
        }
    }
    result.scom = best->champion;
    result.co_scoms = best->co_champions;
    return result;
}

namespace {

struct SweepChampion {
    Topic topic;
    int length = 0;
    double normalized = 0.0;  // phi_L / M * raw at delta = 0
    double raw_over_m = 0.0;  // raw / M
};

ScomResult run_voting_sweep(const Document& doc, const DistanceMatrix& matrix,
                            const CandidateTopicSet& candidates,
                            const NormalizationTable& table, const MethodConfig& cfg,
                            bool penalty) {
    ScoreConfig norm_cfg;
    norm_cfg.mode = ScoreMode::Normalized;
    norm_cfg.power = cfg.power;

    ScomResult result;
    result.method = penalty ? "penalty" : "noise";
    result.champions = local_champions(doc, matrix, candidates, table, norm_cfg, cfg.workers);

    // Within one length group the sweep parameter shifts every score by the
    // same amount (alpha * L) or rescales it monotonically (phi(delta)), so
    // the per-length champions are fixed across the whole sweep.
    std::vector<SweepChampion> champs;
    for (const auto& r : result.champions) {
        SweepChampion s;
        s.topic = r.champion;
        s.length = r.length;
        s.normalized = r.distance;
        s.raw_over_m = r.distance / table.phi(r.length);
        champs.push_back(s);
    }

    auto objective = [&](const SweepChampion& s, double param) {
        if (penalty) return param * static_cast<double>(s.length) + s.normalized;
        return noisy_phi(table, s.length, param) * (s.raw_over_m + param);
    };
    auto winner_at = [&](double param) {
        const SweepChampion* best = nullptr;
        double best_v = 0.0;
        for (const auto& s : champs) {
            double v = objective(s, param);
            if (!best || v < best_v || (v == best_v && topic_less(s.topic, best->topic))) {
                best = &s;
                best_v = v;
            }
        }
        return std::make_pair(best, best_v);
    };

    std::map<std::uint64_t, int> vote_count;  // keyed by topic mask
    auto record = [&](const SweepChampion* s, double value, double param) {
        int v = ++vote_count[s->topic.mask];
        result.votes.push_back(VoteRow{s->topic, value, s->length, param, v});
    };

    // Parameter-zero row: the degenerate zero-distance winner is recorded
    // exactly once before the sweep proper.
    {
        auto [w, v] = winner_at(0.0);
        record(w, v, 0.0);
    }

    double start = penalty ? cfg.alpha_start : cfg.delta_start;
    double step = penalty ? cfg.alpha_step : cfg.delta_step;
    if (step <= 0.0) throw DataError("sweep step must be positive");

    // The alpha sweep always terminates at a length-1 winner. The noise
    // sweep usually does too, but its large-delta winner occasionally
    // settles on a length-2 topic, which also counts as converged.
    const int stop_length = penalty ? 1 : 2;
    bool converged = false;
    for (std::uint64_t it = 0; it < cfg.max_iterations; ++it) {
        double param = start + step * static_cast<double>(it);
        auto [w, v] = winner_at(param);
        record(w, v, param);
        if (w->length <= stop_length) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NoConvergence(std::string(penalty ? "alpha" : "delta") +
                            " sweep did not converge to a short winner within " +
                            std::to_string(cfg.max_iterations) + " iterations");
    }

    // SCOM: most votes, ties lexicographic.
    Topic best;
    int best_votes = -1;
    for (const auto& [mask, votes] : vote_count) {
        Topic t{mask};
        if (votes > best_votes || (votes == best_votes && topic_less(t, best))) {
            best = t;
            best_votes = votes;
        }
    }
    result.scom = best;
    for (const auto& [mask, votes] : vote_count) {
        if (votes == best_votes) result.co_scoms.push_back(Topic{mask});
    }
    std::sort(result.co_scoms.begin(), result.co_scoms.end(), topic_less);
    (void)candidates;
    return result;
}

}  // namespace

ScomResult scom_penalty_voting(const Document& doc, const UnderstandingMap& map,
                               const DistanceMatrix& matrix, const CandidateTopicSet& candidates,
                               const NormalizationTable& table, const MethodConfig& cfg) {
    (void)map;
    return run_voting_sweep(doc, matrix, candidates, table, cfg, true);
}

ScomResult scom_noise_voting(const Document& doc, const UnderstandingMap& map,
                             const DistanceMatrix& matrix, const CandidateTopicSet& candidates,
                             const NormalizationTable& table, const MethodConfig& cfg) {
    (void)map;
    if (table.delta != 0.0) throw ModeMismatch("noise voting expects a zero-noise base table");
    return run_voting_sweep(doc, matrix, candidates, table, cfg, false);
}

double noisy_phi(const NormalizationTable& base, int length, double delta) {
    // Adding delta to every squared distance shifts every group mean by
    // delta, so phi_L(delta) falls out of the zero-noise means directly.
    double mean1 = base.group(1).mean + delta;
    double meanl = base.group(length).mean + delta;
    if (meanl == 0.0) throw ZeroGroupMean("zero noisy group mean");
    return mean1 / meanl;
}

OneScomResult one_scom(const Document& doc, const DistanceMatrix& matrix) {
    OneScomResult out;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < matrix.size(); ++c) {
        double cost = 0.0;
        for (const auto& [idx, count] : doc.entries()) {
            cost += static_cast<double>(count) * matrix.squared(idx, c);
        }
        Topic t{std::uint64_t{1} << c};
        if (cost < best) {
            best = cost;
            out.co_scoms.clear();
            out.co_scoms.push_back(t);
        } else if (cost == best) {
            out.co_scoms.push_back(t);
        }
    }
    out.scom = out.co_scoms.front();
    out.cost = best;
    return out;
}

ConjectureReport check_conjecture(const ScomResult& result, const Document& doc) {
    ConjectureReport r;
    r.scom_length = result.scom.length();
    r.concept_length = doc.concept_length();
    r.satisfied = static_cast<std::size_t>(r.scom_length) <= r.concept_length;
    return r;
}

double topic_dissimilarity(Topic x, Topic y, const DistanceMatrix& matrix) {
    auto side = [&](Topic from, Topic to) {
        double sum = 0.0;
        int n = 0;
        for (auto a : from.members()) {
            sum += concept_topic_distance(a, to, matrix, DistancePower::Plain);
            ++n;
        }
        return sum / static_cast<double>(n);
    };
    return 0.5 * (side(x, y) + side(y, x));
}

TrainingResult train_supervised_parameter(const std::vector<TrainingExample>& training,
                                          TrainedMethod method, const std::vector<double>& grid,
                                          const UnderstandingMap& map,
                                          const DistanceMatrix& matrix,
                                          const CandidateTopicSet& candidates,
                                          const NormalizationTable& table, int workers) {
    (void)map;
    if (training.empty()) throw EmptyTrainingSet("training set is empty");
    if (grid.empty()) throw DataError("parameter grid is empty");

    // The per-length champions of each document are parameter-independent;
    // only the cross-length comparison moves with the parameter.
    ScoreConfig norm_cfg;
    norm_cfg.mode = ScoreMode::Normalized;
    struct DocChamps {
        std::vector<ChampionRecord> records;
        double m = 0.0;
    };
    std::vector<DocChamps> per_doc;
    for (const auto& ex : training) {
        DocChamps dc;
        dc.records = local_champions(ex.doc, matrix, candidates, table, norm_cfg, workers);
        dc.m = static_cast<double>(ex.doc.length());
        per_doc.push_back(std::move(dc));
    }

    TrainingResult out;
    out.best_objective = std::numeric_limits<double>::infinity();
    for (double param : grid) {
        double objective = 0.0;
        for (std::size_t d = 0; d < training.size(); ++d) {
            const ChampionRecord* best = nullptr;
            double best_v = 0.0;
            for (const auto& r : per_doc[d].records) {
                double v;
                if (method == TrainedMethod::Penalty) {
                    v = param * static_cast<double>(r.length) + r.distance;
                } else {
                    double raw_over_m = r.distance / table.phi(r.length);
                    v = noisy_phi(table, r.length, param) * (raw_over_m + param);
                }
                if (!best || v < best_v || (v == best_v && topic_less(r.champion, best->champion))) {
                    best = &r;
                    best_v = v;
                }
            }
            objective += topic_dissimilarity(best->champion, training[d].tag, matrix);
        }
        out.trace.emplace_back(param, objective);
        if (objective < out.best_objective) {
            out.best_objective = objective;
            out.best_param = param;
        }
    }
    return out;
}

}  // namespace umstm
