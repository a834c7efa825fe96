#include "ckd/report.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <set>
#include <sstream>

#include "ckd/dilate.hpp"
#include "ckd/errors.hpp"
#include "ckd/fock.hpp"
#include "ckd/random.hpp"
#include "ckd/variety.hpp"

namespace ckd {

json to_json(const CheckRecord& r) {
    json j;
    j["id"] = r.id;
    if (!r.subject.empty()) j["subject"] = r.subject;
    j["citation"] = r.citation;
    j["residual"] = r.residual;
    j["threshold"] = r.threshold;
    j["scope"] = r.scope;
    j["pass"] = r.pass;
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

const std::vector<std::string>& known_check_ids() {
    static const std::vector<std::string> ids = {
        "a_relations",          "ck_relation",           "commutant_identity",
        "contractivity",        "defect_ranks",          "dilation_coinvariance",
        "dilation_compression", "dilation_minimality",   "kernel_factorization",
        "kernel_psd",           "partial_isometry",      "piece_annihilation",
        "poisson_isometry_defect", "variety_membership", "wold_projection",
        "word_orthogonality"};
    return ids;
}

SuiteConfig config_for(const InputBundle& b, SuiteConfig cfg) {
    if (b.options.level) {
        if (*b.options.level < 1) throw ParseError("level must be >= 1");
        cfg.kernel_level = *b.options.level;
    }
    if (b.options.tol) {
        if (*b.options.tol <= 0) throw ParseError("tol must be positive");
        cfg.tol = *b.options.tol;
    }
    if (b.options.r) cfg.r = *b.options.r;
    if (b.options.checks) cfg.checks = b.options.checks;
    return cfg;
}

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& r) { return r.pass; });
}

json Report::to_json() const {
    json j;
    j["checks"] = json::array();
    for (const auto& r : checks) j["checks"].push_back(ckd::to_json(r));
    j["artifacts"] = artifacts;
    return j;
}

namespace {

std::uint64_t words_up_to(const TransitionMatrix& a, int N) {
    std::uint64_t total = 0;
    for (int k = 0; k <= N; ++k) total += count_admissible(a, k);
    return total;
}

// Largest level <= want (and >= lo) whose space stays below max_dim.
int fit_level(int want, int lo, std::uint64_t max_dim,
              const std::function<std::uint64_t(int)>& dim_at) {
    int level = want;
    while (level > lo && dim_at(level) > max_dim) --level;
    return level;
}

class Builder {
public:
    Builder(const SuiteConfig& cfg, Report& out) : cfg_(cfg), out_(out) {
        if (cfg.checks) {
            for (const auto& id : *cfg.checks) {
                const auto& ids = known_check_ids();
                if (std::find(ids.begin(), ids.end(), id) == ids.end())
                    throw ParseError("unknown check id: " + id);
                selected_.insert(id);
            }
        }
    }

    bool want(const std::string& id) const { return !cfg_.checks || selected_.count(id) > 0; }

    void add(std::string id, std::string citation, double residual, double threshold,
             std::string scope, json details = json::object()) {
        if (!want(id)) return;
        CheckRecord r;
        r.id = std::move(id);
        r.citation = std::move(citation);
        r.residual = residual;
        r.threshold = threshold;
        r.scope = std::move(scope);
        r.pass = std::isfinite(residual) && residual <= threshold;
        r.details = std::move(details);
        out_.checks.push_back(std::move(r));
    }

    void skip(const std::vector<std::string>& ids, const std::string& reason) {
        for (const auto& id : ids)
            if (want(id)) out_.artifacts["skipped"].push_back({{"id", id}, {"reason", reason}});
    }

private:
    const SuiteConfig& cfg_;
    Report& out_;
    std::set<std::string> selected_;
};

std::string level_text(const char* what, int level) {
    std::ostringstream os;
    os << what << " " << level;
    return os.str();
}

Mat gap_of(const std::vector<SpMat>& ops) {
    const Eigen::Index dim = ops.front().rows();
    SpMat sum(dim, dim);
    for (const auto& op : ops) sum += op * SpMat(op.adjoint());
    return identity(dim) - Mat(sum);
}

void dilation_records(Builder& b, const OperatorTuple& t, const TransitionMatrix& a,
                      const SuiteConfig& cfg, json& art) {
    const int n = t.n();
    const int d = t.dim();
    const int m = fit_level(cfg.kernel_level, 2, 1200, [&](int k) { return words_up_to(a, k) * d; });
    art["kernel_level"] = m;

    if (b.want("kernel_psd")) {
        const KernelGram g = kernel_gram(t, a, m, cfg.tol);
        const HermEig eg = eig_desc(g.matrix);
        const double lmax = std::max(1.0, eg.values(0));
        const double me = eg.values(eg.values.size() - 1);
        b.add("kernel_psd", "K(alpha, beta) block matrix over admissible words is positive",
              std::max(0.0, -me) / lmax, 1e-8, level_text("words of length <= m, m =", m),
              {{"min_eigenvalue", me}, {"max_eigenvalue", eg.values(0)}});
    }
    if (b.want("kernel_factorization")) {
        const auto fc = kernel_factorization_check(t, a, m, cfg.tol);
        b.add("kernel_factorization",
              "K^(m) = L_1 ... L_m Q^(m) L_m^* ... L_1^* (non-unital tuples extended by Delta_T)",
              std::max(fc.residual, fc.augmented_relations), cfg.dilation_tol,
              level_text("assembled matrices at m =", m),
              {{"augmented", fc.augmented}, {"augmented_relations", fc.augmented_relations}});
    }

    const KernelDilation kd = dilate_kernel(t, a, m, cfg.tol);
    art["kernel_rank"] = kd.gram_rank;
    art["dilation_dim"] = kd.dim();
    const int wl = std::max(1, m - 2);
    const std::string scoped = "kernel dilation at m = " + std::to_string(m) +
                               "; identities for words of length L on levels <= m - L, L <= " +
                               std::to_string(wl);

    b.add("dilation_coinvariance", "T~_i^* E = E T_i^*", coinvariance_residual(kd, t),
          cfg.dilation_tol, "whole dilation space");
    b.add("dilation_compression", "E^* T~^u (T~^v)^* E = T^u (T^v)^*",
          b.want("dilation_compression") ? compression_residual(kd, t, a, m - 2) : 0.0,
          cfg.dilation_tol, level_text("admissible |u|, |v| <=", m - 2));
    {
        const Mat& top = kd.level_frames.back();
        const double res = kd.dim() == 0 ? 0.0 : op_norm(Mat(identity(kd.dim()) - top * top.adjoint()));
        b.add("dilation_minimality", "span{T~^w E h} is the whole dilation space", res,
              cfg.dilation_tol, level_text("admissible |w| <=", m),
              {{"gram_rank", kd.gram_rank}, {"dilation_dim", kd.dim()}});
    }
    if (b.want("ck_relation") || b.want("partial_isometry") || b.want("word_orthogonality")) {
        const auto pr = partial_isometry_checks(kd.ops, a, wl, kd.scope());
        const auto pin = partial_isometry_checks(t, a, wl);
        b.add("ck_relation", "T~_i^* T~_i = I - sum_j (1 - a_ij) T~_j T~_j^*", pr.ck_relation_max,
              cfg.dilation_tol, scoped, {{"per_letter", pr.ck_relation}, {"input_residual", pin.ck_relation_max}});
        b.add("partial_isometry",
              "T~_i T~_i^* T~_i = T~_i, T~_i^* T~_j = 0 (i != j), T~^w (T~^w)^* T~^w = T~^w",
              std::max({pr.idempotent, pr.orthogonal_ranges, pr.word_partial_isometry}),
              cfg.dilation_tol, scoped,
              {{"idempotent", pr.idempotent},
               {"orthogonal_ranges", pr.orthogonal_ranges},
               {"word_partial_isometry", pr.word_partial_isometry}});
        b.add("word_orthogonality",
              "(T~^u)^* T~^v = delta_uv (I - sum_j (1 - a_t(u)j) T~_j T~_j^*) and its prefix cases",
              pr.word_orthogonality, cfg.dilation_tol, scoped,
              {{"input_residual", pin.word_orthogonality}});
    }
    if (b.want("defect_ranks")) {
        const SchafferDilation s = dilate_isometric_schaffer(t, 2, cfg.tol);
        const int rs = defect_rank(gap_of(s.ops));
        const int rk = defect_rank(gap_of(kd.ops));
        const int ri = defect_rank(identity(d) - row_square(t));
        const double res = std::max(std::abs(rs - ri), std::abs(rk - ri));
        b.add("defect_ranks",
              "rank(I - sum T^_i T^_i^*) = rank(I - sum T~_i T~_i^*) = rank(I - sum T_i T_i^*)", res,
              0.0, "Schaffer dilation at level 2 and kernel dilation at m = " + std::to_string(m) +
                       "; singular values above 1e-8 max(sigma_max, 1)",
              {{"ranks", {rs, rk, ri}}});
    }
    if (b.want("piece_annihilation")) {
        const std::uint64_t kd_dim = static_cast<std::uint64_t>(kd.dim());
        const std::uint64_t defect_bound = static_cast<std::uint64_t>(n) * kd_dim;
        const int N = fit_level(cfg.schaffer_level, 2, cfg.schaffer_max_dim, [&](int k) {
            std::uint64_t f = 0, p = 1;
            for (int l = 0; l <= k; ++l, p *= static_cast<std::uint64_t>(n)) f += p;
            return kd_dim + f * defect_bound;
        });
        const SchafferDilation s = dilate_isometric_schaffer(kd.dense(), N, cfg.tol);
        b.add("piece_annihilation",
              "(L^w L_i L_j)^* vanishes on the dilation space for a_ij = 0", annihilation_residual(s, a),
              cfg.dilation_tol,
              "Schaffer dilation of the kernel dilation at level N = " + std::to_string(N) +
                  "; words |w| <= N - 2",
              {{"schaffer_dim", s.dim()}, {"D_is_projection", s.D_is_projection}});
    }
    art["q_purity_profile"] = q_purity_check(kd, a, m);

    if (b.want("poisson_isometry_defect")) {
        const int N = fit_level(cfg.poisson_level, 1, 20000,
                                [&](int k) { return words_up_to(a, k) * static_cast<std::uint64_t>(d); });
        const auto prof = purity_profile(t, a, N + 1);
        const bool pure = prof[N - 1] <= cfg.tol;
        const double r = pure ? 1.0 : cfg.r;
        const PoissonDilation pd = dilate_poisson(t, a, N, pure ? std::optional<double>{} : r, cfg.tol);
        const double bound = pure ? prof[N] : purity_profile(t.scaled(r), a, N + 1)[N];
        b.add("poisson_isometry_defect", "||K^* K - I|| <= p_(N+1)", pd.isometry_defect,
              bound + cfg.tol, "Poisson kernel truncated at N = " + std::to_string(N),
              {{"r", r}, {"fock_dim", pd.fock_dim}, {"defect_rank", pd.defect_rank}});
    }
}

} // namespace

Report run_suite(const InputBundle& bundle, const SuiteConfig& cfg) {
    Report out;
    out.artifacts["skipped"] = json::array();
    Builder b(cfg, out);
    const TransitionMatrix& a = bundle.A;
    out.artifacts["n"] = a.n();

    if (b.want("commutant_identity")) {
        const TruncatedFock f(a, cfg.commutant_level);
        b.add("commutant_identity", "S^a X^(b reversed) e^g = X^(b reversed) S^a e^g",
              commutant_check(f, std::min(cfg.commutant_len, cfg.commutant_level)), 0.0,
              "A-Fock space truncated at N = " + std::to_string(cfg.commutant_level) +
                  "; |a| + |b| + |g| <= " + std::to_string(std::min(cfg.commutant_len, cfg.commutant_level)));
    }

    const std::vector<std::string> tuple_ids = {
        "a_relations",       "ck_relation",          "contractivity",          "defect_ranks",
        "dilation_coinvariance", "dilation_compression", "dilation_minimality", "kernel_factorization",
        "kernel_psd",        "partial_isometry",     "piece_annihilation",     "poisson_isometry_defect",
        "variety_membership", "wold_projection",     "word_orthogonality"};
    if (!bundle.T) {
        b.skip(tuple_ids, "no tuple in input");
    } else {
        const OperatorTuple& t = *bundle.T;
        if (t.n() != a.n()) throw ParseError("alphabet size of A and tuple differ");
        out.artifacts["dim"] = t.dim();

        const RowContraction rc = is_row_contraction(t, cfg.tol);
        b.add("contractivity", "sum_i T_i T_i^* <= I", std::max(0.0, -rc.min_eig), cfg.tol,
              "whole space", {{"unital", rc.unital}, {"deficiency", rc.deficiency}});
        const ARelationReport ar = satisfies_A_relations(t, a, cfg.tol);
        json ad = {{"max_violation", ar.max_violation}};
        if (ar.worst_i > 0) ad["worst_pair"] = {ar.worst_i, ar.worst_j};
        b.add("a_relations", "T_i T_j = 0 whenever a_ij = 0", ar.max_violation, cfg.tol,
              "whole space", ad);

        if (t.dim() == 1) {
            Vec z(t.n());
            for (int i = 0; i < t.n(); ++i) z(i) = t.mats()[i](0, 0);
            const Membership mb = membership(a, z);
            b.add("variety_membership", "sum |z_i|^2 = 1 and z_i z_j = 0 whenever a_ij = 0",
                  std::max(mb.norm_residual, mb.relation_residual), 1e-12, "scalar tuple",
                  {{"by_supports", point_in_M_by_supports(symmetrize(a), z)}});
        } else {
            b.skip({"variety_membership"}, "tuple is not scalar");
        }

        const PartialIsometryReport pin = partial_isometry_checks(t, a, 1);
        if (pin.ck_relation_max <= cfg.tol) {
            if (b.want("wold_projection")) {
                try {
                    const WoldResult w = wold(t, a, 60, cfg.tol);
                    b.add("wold_projection", "P_C + P_N = I with P_N = lim sum_|w|=k T^w (T^w)^*",
                          w.split_residual, cfg.dilation_tol, "input tuple",
                          {{"stable_at", w.stable_at},
                           {"dim_H_N", w.H_N.cols()},
                           {"dim_H_C", w.H_C.cols()},
                           {"dim_wandering", w.wandering.cols()}});
                } catch (const StabilizationError& e) {
                    b.add("wold_projection", "P_C + P_N = I with P_N = lim sum_|w|=k T^w (T^w)^*",
                          INFINITY, cfg.dilation_tol, "input tuple",
                          {{"error", e.what()}, {"steps", e.profile}});
                }
            }
        } else {
            b.skip({"wold_projection"}, "input does not satisfy the Cuntz-Krieger relation");
        }

        if (rc.contractive && ar.holds) {
            json art = json::object();
            dilation_records(b, t, a, cfg, art);
            out.artifacts["dilation"] = art;
        } else {
            b.skip({"ck_relation", "defect_ranks", "dilation_coinvariance", "dilation_compression",
                    "dilation_minimality", "kernel_factorization", "kernel_psd", "partial_isometry",
                    "piece_annihilation", "poisson_isometry_defect", "word_orthogonality"},
                   "input is not a contractive A-relation tuple");
        }
    }
    std::stable_sort(out.checks.begin(), out.checks.end(),
                     [](const CheckRecord& x, const CheckRecord& y) { return x.id < y.id; });
    std::sort(out.artifacts["skipped"].begin(), out.artifacts["skipped"].end(),
              [](const json& x, const json& y) { return x["id"] < y["id"]; });
    return out;
}

Report run_seeded_suite(std::uint64_t seed, const SuiteConfig& cfg) {
    Rng rng(seed);
    std::vector<std::pair<std::string, InputBundle>> cases;
    const TransitionMatrix flip({{0, 1}, {1, 0}});
    const TransitionMatrix golden({{1, 1}, {1, 0}});
    const TransitionMatrix three({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    const TransitionMatrix a24({{1, 1, 1, 0}, {1, 1, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 1}});

    {
        Mat t1 = Mat::Zero(2, 2), t2 = Mat::Zero(2, 2);
        t1(0, 1) = 1.0;
        t2(1, 0) = 1.0;
        cases.push_back({"flip_pair", {flip, OperatorTuple({t1, t2}), {}, {}}});
    }
    cases.push_back({"random_flip", {flip, random_fock_compression(TruncatedFock(flip, 3), 2, 3, rng), {}, {}}});
    cases.push_back({"random_golden", {golden, random_fock_compression(TruncatedFock(golden, 3), 2, 3, rng), {}, {}}});
    cases.push_back({"random_three", {three, random_fock_compression(TruncatedFock(three, 3), 2, 3, rng), {}, {}}});
    cases.push_back({"spherical", {a24, random_spherical_tuple(a24, 2, rng), {}, {}}});
    {
        const Vec z = random_variety_point(a24, rng);
        std::vector<Mat> ms;
        for (int i = 0; i < 4; ++i) ms.push_back(Mat::Constant(1, 1, z(i)));
        cases.push_back({"variety_point", {a24, OperatorTuple(std::move(ms)), {}, {}}});
    }
    cases.push_back({"zero", {TransitionMatrix(ZeroOneMatrix{{1}}), OperatorTuple({Mat::Zero(2, 2)}), {}, {}}});

    Report out;
    out.artifacts["seed"] = seed;
    out.artifacts["subjects"] = json::object();
    for (auto& [name, bundle] : cases) {
        Report r = run_suite(bundle, cfg);
        for (auto& rec : r.checks) {
            rec.subject = name;
            out.checks.push_back(std::move(rec));
        }
        json art = r.artifacts;
        art["input"] = tuple_to_json(bundle.A, *bundle.T);
        out.artifacts["subjects"][name] = std::move(art);
    }
    return out;
}

} // namespace ckd
