#include "projconst/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "projconst/blowup.hpp"
#include "projconst/linalg.hpp"
#include "projconst/linf.hpp"
#include "projconst/matcore.hpp"
#include "projconst/matio.hpp"
#include "projconst/rng.hpp"
#include "projconst/seqmodel.hpp"
#include "projconst/signsearch.hpp"
#include "projconst/threads.hpp"

namespace projconst::cli {

using json = nlohmann::ordered_json;

namespace {

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json sign_to_json(const SignMatrix& s) {
    json rows = json::array();
    for (int i = 0; i < s.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < s.dim(); ++j) row.push_back(s(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json entry_to_json(const blowup::ReportEntry& e) {
    if (e.applicable()) return *e.value;
    return json{{"skipped", e.skipped_reason}};
}

json bool_entry_to_json(const blowup::BoolEntry& e) {
    if (e.value) {
        if (e.detail.empty()) return *e.value;
        return json{{"value", *e.value}, {"detail", e.detail}};
    }
    return json{{"skipped", e.skipped_reason}};
}

SymMatrix load_sym(const std::string& path, double sym_tol = tol::sym) {
    return SymMatrix(read_matrix_file(path), sym_tol);
}

SignMatrix load_sign(const std::string& path) { return SignMatrix(read_matrix_file(path)); }

std::vector<double> load_diag(const std::string& path) {
    Mat m = read_matrix_file(path);
    if (m.rows() != 1 && m.cols() != 1)
        throw ArgumentError("diagonal file must be a single row or column");
    std::vector<double> d;
    for (double v : m.data()) d.push_back(v);
    return d;
}

// Exact rational vector, for the averaging path where dyadic rounding
// would blur the exactness claim.
std::vector<Rational> load_rational_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open file '" + path + "'");
    int rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw ParseError("header must be 'rows cols'", 1, 1);
    if (rows != 1 && cols != 1) throw ArgumentError("diagonal file must be a single row or column");
    std::vector<Rational> out;
    std::string token;
    for (int i = 0; i < rows * cols; ++i) {
        if (!(in >> token)) throw ParseError("missing entries", 2 + i, 1);
        out.push_back(parse_rational(token));
    }
    return out;
}

// ---- output formatting ----------------------------------------------------

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& value : j)
            flatten(value, prefix + "[" + std::to_string(i++) + "]", out);
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += "\"\"";
        else quoted += c;
    }
    quoted += "\"";
    return quoted;
}

void emit(const json& j, Format format, std::ostream& out) {
    switch (format) {
        case Format::json:
            out << j.dump(2) << "\n";
            return;
        case Format::text: {
            std::vector<std::pair<std::string, std::string>> kv;
            flatten(j, "", kv);
            for (const auto& [key, value] : kv) out << key << ": " << value << "\n";
            return;
        }
        case Format::csv: {
            // Arrays of records become one row each; everything else is a
            // single row. Columns are dotted flattened names.
            std::vector<json> rows;
            json common = json::object();
            if (j.is_object() && j.contains("records") && j["records"].is_array()) {
                for (const auto& [key, value] : j.items())
                    if (key != "records") common[key] = value;
                for (const auto& rec : j["records"]) {
                    json row = common;
                    for (const auto& [key, value] : rec.items()) row[key] = value;
                    rows.push_back(std::move(row));
                }
                if (rows.empty()) rows.push_back(common);
            } else {
                rows.push_back(j);
            }
            std::vector<std::string> header;
            std::vector<std::vector<std::pair<std::string, std::string>>> flat_rows;
            for (const auto& row : rows) {
                std::vector<std::pair<std::string, std::string>> kv;
                flatten(row, "", kv);
                for (const auto& [key, value] : kv)
                    if (std::find(header.begin(), header.end(), key) == header.end())
                        header.push_back(key);
                flat_rows.push_back(std::move(kv));
            }
            for (std::size_t i = 0; i < header.size(); ++i)
                out << (i ? "," : "") << csv_escape(header[i]);
            out << "\n";
            for (const auto& kv : flat_rows) {
                for (std::size_t i = 0; i < header.size(); ++i) {
                    std::string value;
                    for (const auto& [key, v] : kv)
                        if (key == header[i]) {
                            value = v;
                            break;
                        }
                    out << (i ? "," : "") << csv_escape(value);
                }
                out << "\n";
            }
            return;
        }
    }
}

// ---- commands --------------------------------------------------------------

int cmd_pin(const RunConfig& cfg, std::ostream& out) {
    if (cfg.matrix_path.empty()) throw ArgumentError("pin: --matrix is required");
    if (!cfg.n) throw ArgumentError("pin: --n is required");
    SymMatrix a = load_sym(cfg.matrix_path, cfg.tol_or("sym", tol::sym));
    json rep;
    rep["command"] = "pin";
    rep["matrix"] = cfg.matrix_path;
    rep["dim"] = a.dim();
    rep["n"] = *cfg.n;
    if (!cfg.diag_path.empty()) {
        std::vector<double> diag = load_diag(cfg.diag_path);
        rep["diag"] = cfg.diag_path;
        rep["value"] = pi_n_diag_product(a, diag, *cfg.n);
    } else {
        rep["value"] = pi_n(a, *cfg.n);
    }
    emit(rep, cfg.format, out);
    return kExitOk;
}

int cmd_lambda(const RunConfig& cfg, std::ostream& out) {
    if (cfg.basis_path.empty()) throw ArgumentError("lambda: --basis is required");
    linf::SubspaceLinf v(read_matrix_file(cfg.basis_path));
    linf::LambdaResult res = linf::relative_projection_constant(v);
    const double gap_tol = cfg.tol_or("duality_gap", 1e-8);

    json rep;
    rep["command"] = "lambda";
    rep["basis"] = cfg.basis_path;
    rep["ambient_dim"] = v.ambient_dim();
    rep["dim"] = v.dim();
    rep["value"] = res.value;
    rep["dual_bound"] = res.dual_bound;
    rep["lp_status"] = res.lp_status == linf::LpStatus::optimal ? "optimal" : "iteration_limit";
    rep["P"] = mat_to_json(res.optimal_p.p);
    rep["tol"] = {{"duality_gap", gap_tol}, {"lower_bound", 1e-10}};
    emit(rep, cfg.format, out);

    bool ok = res.value >= 1.0 - 1e-10 &&
              (res.lp_status != linf::LpStatus::optimal || res.value >= res.dual_bound - gap_tol);
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_search(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.n || !cfg.m) throw ArgumentError("search: --n and --m are required");
    const double eps = cfg.eps.value_or(0.0);
    std::vector<SignMatrix> classes = signsearch::enumerate_sign_classes(*cfg.m);

    signsearch::SimplexMaxOpts opts;
    opts.restarts = cfg.restarts;
    opts.seed = cfg.seed;
    opts.grid = cfg.grid;
    opts.gap_tol = cfg.tol_or("gap", 1e-8);

    json rep;
    rep["command"] = "search";
    rep["n"] = *cfg.n;
    rep["m"] = *cfg.m;
    rep["eps"] = eps;
    rep["seed"] = cfg.seed;
    rep["class_count"] = static_cast<int>(classes.size());
    rep["tol"] = {{"grid_certificate", 1e-6}};

    json records = json::array();
    int best_class = -1;
    double best_value = -1e300;
    std::vector<signsearch::SimplexMaxResult> results(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i)
        results[i] = signsearch::maximize_over_simplex(classes[i], *cfg.n, eps, opts);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& r = results[i];
        json rec;
        rec["class_id"] = static_cast<int>(i);
        rec["sign_matrix"] = sign_to_json(classes[i]);
        rec["best_D"] = r.best_diag;
        rec["value"] = r.value;
        if (r.grid_certificate) {
            rec["grid_certificate"] = {{"resolution", r.grid_certificate->resolution},
                                       {"best_value", r.grid_certificate->best_value}};
        }
        rec["degenerate_gap_seen"] = r.degenerate_gap_seen;
        records.push_back(std::move(rec));
        if (r.value > best_value) {
            best_value = r.value;
            best_class = static_cast<int>(i);
        }
    }
    rep["records"] = std::move(records);
    rep["best"] = {{"class_id", best_class}, {"value", best_value}};
    emit(rep, cfg.format, out);
    return kExitOk;
}

int cmd_blowup(const RunConfig& cfg, std::ostream& out) {
    if (cfg.s0_path.empty()) throw ArgumentError("blowup: --s0 is required");
    if (cfg.mult.empty()) throw ArgumentError("blowup: --mult is required");
    if (!cfg.n) throw ArgumentError("blowup: --n is required");
    SignMatrix s0 = load_sign(cfg.s0_path);
    blowup::BlowupSpec spec(cfg.mult);
    std::optional<SymMatrix> p0;
    if (!cfg.p0_path.empty()) p0 = load_sym(cfg.p0_path, 1e-9);

    blowup::RemarkReport r = blowup::verify_remark(s0, spec, *cfg.n, cfg.assume_maximizer, p0);
    const double identity_tol = cfg.tol_or("identity", 1e-8);

    json rep;
    rep["command"] = "blowup";
    rep["s0"] = cfg.s0_path;
    rep["mult"] = cfg.mult;
    rep["n"] = r.n;
    rep["d"] = r.d;
    rep["assume_maximizer"] = cfg.assume_maximizer;
    rep["gap"] = entry_to_json(r.gap);
    rep["trace_id"] = entry_to_json(r.trace_id);
    rep["commute"] = entry_to_json(r.commute);
    rep["sgn_match"] = bool_entry_to_json(r.sgn_match);
    rep["vtv"] = entry_to_json(r.vtv);
    rep["q_trace_id"] = entry_to_json(r.q_trace_id);
    rep["sgn_q"] = bool_entry_to_json(r.sgn_q);
    rep["rho_eq"] = entry_to_json(r.rho_eq);
    rep["abs_sum_id"] = entry_to_json(r.abs_sum_id);
    rep["final_ineq_slack"] = entry_to_json(r.final_ineq_slack);
    rep["tol"] = {{"identity", identity_tol}, {"final_ineq_slack", -identity_tol}};
    emit(rep, cfg.format, out);

    if (!cfg.assume_maximizer) return kExitOk;
    bool ok = r.identities_hold(identity_tol);
    if (r.final_ineq_slack.applicable())
        ok = ok && *r.final_ineq_slack.value >= -identity_tol;
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_kobos(const RunConfig& cfg, std::ostream& out) {
    seqmodel::KobosReport r = seqmodel::kobos_report(cfg.truncation);

    json rep;
    rep["command"] = "kobos";
    rep["truncation"] = r.truncation;
    json f_basis = json::array();
    for (const auto& g : r.f_basis) f_basis.push_back(g.to_string());
    rep["F_basis"] = std::move(f_basis);
    rep["dim_V"] = static_cast<int>(r.v_basis.size());
    json v_basis = json::array();
    for (const auto& g : r.v_basis) v_basis.push_back(g.to_string());
    rep["V_basis"] = std::move(v_basis);
    json g0 = json::array();
    for (const auto& g : r.g0_basis) g0.push_back(g.to_string());
    rep["G0_basis"] = std::move(g0);
    rep["U"] = "x in c0 with x_i = 0 for i in {1, 2} (1-based)";
    rep["witness"] = r.witness.to_string();
    rep["certificate"] = {
        {"forcing_coord_1based", r.forcing_coord + 1},
        {"forced_coefficient", rational_to_string(r.forced_coefficient)},
        {"mismatch_coord_1based", r.mismatch_coord + 1},
        {"decomposition_value", rational_to_string(r.decomposition_value)},
        {"witness_value", rational_to_string(r.witness_value)},
    };
    rep["witness_outside_direct_sum"] = r.witness_outside_direct_sum;
    rep["truncated_preannihilator_dim"] = r.truncated_preannihilator_dim;
    rep["truncated_checks_pass"] = r.truncated_checks_pass;
    rep["lambda_V"] = rational_to_string(r.lambda_v);
    json phi = json::array();
    for (const auto& v : r.norming_functional) phi.push_back(rational_to_string(v));
    rep["norming_functional"] = std::move(phi);
    rep["lambda_F"] = r.lambda_f;
    rep["lambda_F_dual_bound"] = r.lambda_f_dual_bound;
    rep["equality_refuted"] = r.equality_refuted;
    rep["tol"] = {{"exact_arithmetic", 0.0}, {"lambda_F_lp", 1e-6}};
    emit(rep, cfg.format, out);

    bool ok = r.v_basis.size() == 1 &&
              r.v_basis.front() ==
                  seqmodel::EvSeq({Rational(1), Rational(-1)}, Rational(0)) &&
              r.g0_basis.size() == 2 && r.g0_basis[0] == seqmodel::EvSeq::unit(0) &&
              r.g0_basis[1] == seqmodel::EvSeq::unit(1) && r.witness_outside_direct_sum &&
              r.truncated_checks_pass && r.lambda_v == 1 && r.equality_refuted;
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_duality_fuzz(const RunConfig& cfg, std::ostream& out) {
    const int trials = cfg.trials;
    const double resid_tol = cfg.tol_or("resid", tol::resid);
    Rng master(cfg.seed);

    struct TrialOutcome {
        int dim = 0, n = 0;
        linf::DualityReport rep;
        bool pass = false;
    };
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));

    parallel_for(trials, [&](int t) {
        Rng rng = master.fork(static_cast<std::uint64_t>(t));
        int d = cfg.dim ? *cfg.dim : 2 + t % 7;
        int n = d == 1 ? 1 : rng.uniform_int(1, d - 1);
        // Resample until the pair is comfortably complementary; tolerances
        // below assume a condition number around 1e3 or better.
        Mat bv(d, n), bu(d, d - n);
        while (true) {
            for (double& v : bv.data()) v = rng.gaussian();
            for (double& v : bu.data()) v = rng.gaussian();
            Mat concat(d, d);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < n; ++j) concat(i, j) = bv(i, j);
                for (int j = 0; j < d - n; ++j) concat(i, n + j) = bu(i, j);
            }
            SingularExtent sv = singular_extent(concat);
            if (sv.smallest > 3e-3 * sv.largest) break;
        }
        TrialOutcome& o = outcomes[static_cast<std::size_t>(t)];
        o.dim = d;
        o.n = n;
        o.rep = linf::duality_check(linf::SubspaceLinf(bv), linf::SubspaceLinf(bu));
        o.pass = o.rep.passed(resid_tol);
    });

    int pass_count = 0;
    json failures = json::array();
    for (int t = 0; t < trials; ++t) {
        const auto& o = outcomes[static_cast<std::size_t>(t)];
        if (o.pass) {
            ++pass_count;
            continue;
        }
        failures.push_back({{"trial", t},
                            {"dim", o.dim},
                            {"n", o.n},
                            {"dims_match", o.rep.dims_match},
                            {"dual_split_residual", o.rep.dual_split_residual},
                            {"double_ann_residual_v", o.rep.double_ann_residual_v},
                            {"double_ann_residual_u", o.rep.double_ann_residual_u},
                            {"adjoint_range_residual", o.rep.adjoint_range_residual},
                            {"adjoint_kernel_residual", o.rep.adjoint_kernel_residual},
                            {"norms_equal_exactly", o.rep.norms_equal_exactly}});
    }

    json rep;
    rep["command"] = "duality-fuzz";
    rep["trials"] = trials;
    rep["seed"] = cfg.seed;
    if (cfg.dim) rep["dim"] = *cfg.dim;
    else rep["dim"] = "2..8 cycling";
    rep["passes"] = pass_count;
    rep["failures"] = std::move(failures);
    rep["all_pass"] = pass_count == trials;
    rep["tol"] = {{"residual", resid_tol}, {"norm_identity", 0.0}};
    emit(rep, cfg.format, out);
    return pass_count == trials ? kExitOk : kExitCheckFailed;
}

int cmd_vn_check(const RunConfig& cfg, std::ostream& out) {
    const double eq_tol = cfg.tol_or("eq", tol::eq);
    const double resid_tol = cfg.tol_or("resid", tol::resid);

    if (!cfg.a_path.empty() || !cfg.b_path.empty()) {
        if (cfg.a_path.empty() || cfg.b_path.empty())
            throw ArgumentError("vn-check: both --a and --b are required for file mode");
        SymMatrix a = load_sym(cfg.a_path, 1e-9);
        SymMatrix b = load_sym(cfg.b_path, 1e-9);
        VnCertificate cert = vn_trace_check(a, b, eq_tol);
        json rep;
        rep["command"] = "vn-check";
        rep["lhs"] = cert.lhs;
        rep["bound"] = cert.bound;
        rep["margin"] = cert.bound - cert.lhs;
        rep["equality"] = cert.equality;
        if (cert.shared_basis) {
            rep["shared_basis"] = mat_to_json(*cert.shared_basis);
            rep["paired_b_eigenvalues"] = cert.paired_b_eigenvalues;
            rep["certificate_residual"] = cert.certificate_residual;
        }
        rep["a_eigenvalues"] = cert.a_eigenvalues;
        rep["b_eigenvalues"] = cert.b_eigenvalues;
        rep["tol"] = {{"eq", eq_tol}, {"certificate_residual", resid_tol}};
        emit(rep, cfg.format, out);
        bool ok = cert.lhs <= cert.bound + eq_tol &&
                  (!cert.equality || cert.certificate_residual <= resid_tol);
        return ok ? kExitOk : kExitCheckFailed;
    }

    // Property mode: commuting pairs must certify equality, generic pairs
    // must be strictly below the bound.
    const int trials = cfg.trials;
    const int d = cfg.dim.value_or(4);
    Rng master(cfg.seed);
    std::vector<int> commuting_ok(static_cast<std::size_t>(trials), 0);
    std::vector<int> generic_ok(static_cast<std::size_t>(trials), 0);

    parallel_for(trials, [&](int t) {
        Rng rng = master.fork(static_cast<std::uint64_t>(t));
        // Commuting pair with a shared eigenbasis and matched ordering.
        Mat g(d, d);
        for (double& v : g.data()) v = rng.gaussian();
        Mat q = orthonormalize_columns(g);
        std::vector<double> alpha(static_cast<std::size_t>(d)), beta(static_cast<std::size_t>(d));
        for (double& v : alpha) v = rng.uniform(-1.0, 1.0);
        for (double& v : beta) v = rng.uniform(-1.0, 1.0);
        std::sort(alpha.rbegin(), alpha.rend());
        std::sort(beta.rbegin(), beta.rend());
        Mat a(d, d), b(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double va = 0.0, vb = 0.0;
                for (int k = 0; k < d; ++k) {
                    va += q(i, k) * alpha[static_cast<std::size_t>(k)] * q(j, k);
                    vb += q(i, k) * beta[static_cast<std::size_t>(k)] * q(j, k);
                }
                a(i, j) = va;
                b(i, j) = vb;
            }
        VnCertificate cert = vn_trace_check(SymMatrix(a, 1e-9), SymMatrix(b, 1e-9), eq_tol);
        commuting_ok[static_cast<std::size_t>(t)] =
            cert.equality && cert.certificate_residual <= resid_tol;

        // Generic pair.
        Mat ga(d, d), gb(d, d);
        for (double& v : ga.data()) v = rng.gaussian();
        for (double& v : gb.data()) v = rng.gaussian();
        Mat sa(d, d), sb(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                sa(i, j) = 0.5 * (ga(i, j) + ga(j, i));
                sb(i, j) = 0.5 * (gb(i, j) + gb(j, i));
            }
        VnCertificate generic = vn_trace_check(SymMatrix(sa), SymMatrix(sb), eq_tol);
        generic_ok[static_cast<std::size_t>(t)] =
            !generic.equality && (generic.bound - generic.lhs) > 1e-9;
    });

    int commuting_pass = 0, generic_pass = 0;
    for (int t = 0; t < trials; ++t) {
        commuting_pass += commuting_ok[static_cast<std::size_t>(t)];
        generic_pass += generic_ok[static_cast<std::size_t>(t)];
    }
    json rep;
    rep["command"] = "vn-check";
    rep["trials"] = trials;
    rep["dim"] = d;
    rep["seed"] = cfg.seed;
    rep["commuting_pass"] = commuting_pass;
    rep["generic_pass"] = generic_pass;
    rep["all_pass"] = commuting_pass == trials && generic_pass == trials;
    rep["tol"] = {{"eq", eq_tol}, {"certificate_residual", resid_tol}, {"strict_margin", 1e-9}};
    emit(rep, cfg.format, out);
    return (commuting_pass == trials && generic_pass == trials) ? kExitOk : kExitCheckFailed;
}

int cmd_eps_limit(const RunConfig& cfg, std::ostream& out) {
    if (cfg.s0_path.empty()) throw ArgumentError("eps-limit: --s0 is required");
    if (!cfg.n) throw ArgumentError("eps-limit: --n is required");
    if (cfg.eps_seq.empty()) throw ArgumentError("eps-limit: --eps with a comma list is required");
    SignMatrix s = load_sign(cfg.s0_path);

    signsearch::SimplexMaxOpts opts;
    opts.restarts = cfg.restarts;
    opts.seed = cfg.seed;
    opts.grid = cfg.grid;
    opts.limit_tol = cfg.tol_or("limit", 1e-6);

    signsearch::EpsLimitResult r = signsearch::eps_limit_check(s, *cfg.n, cfg.eps_seq, opts);

    json rep;
    rep["command"] = "eps-limit";
    rep["s0"] = cfg.s0_path;
    rep["n"] = *cfg.n;
    rep["eps"] = cfg.eps_seq;
    rep["seed"] = cfg.seed;
    rep["values"] = r.values;
    rep["eps_zero_value"] = r.eps_zero_value;
    rep["nondecreasing"] = r.nondecreasing;
    rep["limit_reached"] = r.limit_reached;
    rep["tol"] = {{"limit", opts.limit_tol}, {"monotonicity", 1e-10}};
    emit(rep, cfg.format, out);
    return (r.nondecreasing && r.limit_reached) ? kExitOk : kExitCheckFailed;
}

int cmd_stabilizer(const RunConfig& cfg, std::ostream& out) {
    if (cfg.matrix_path.empty()) throw ArgumentError("stabilizer: --matrix is required");
    SymMatrix a = load_sym(cfg.matrix_path, 1e-9);
    const double match_tol = cfg.tol_or("match", 1e-10);
    std::vector<signsearch::SignedPerm> group = signsearch::stabilizer(a, match_tol);

    json rep;
    rep["command"] = "stabilizer";
    rep["matrix"] = cfg.matrix_path;
    rep["dim"] = a.dim();
    rep["order"] = static_cast<int>(group.size());
    json elements = json::array();
    for (const auto& q : group) elements.push_back({{"perm", q.perm}, {"sign", q.sign}});
    rep["elements"] = std::move(elements);
    rep["tol"] = {{"match", match_tol}};

    bool ok = true;
    if (!cfg.symmetrize_diag_path.empty()) {
        std::vector<Rational> diag = load_rational_vector(cfg.symmetrize_diag_path);
        std::vector<Rational> avg = signsearch::symmetrize_exact(diag, group);
        json avg_json = json::array();
        for (const auto& v : avg) avg_json.push_back(rational_to_string(v));
        rep["symmetrized"] = std::move(avg_json);

        // Exact invariance and idempotence.
        bool invariant = true;
        for (const auto& q : group) {
            for (int i = 0; i < a.dim(); ++i) {
                if (avg[static_cast<std::size_t>(q.perm[static_cast<std::size_t>(i)])] !=
                    avg[static_cast<std::size_t>(i)])
                    invariant = false;
            }
        }
        std::vector<Rational> twice = signsearch::symmetrize_exact(avg, group);
        bool idempotent = twice == avg;
        rep["invariant_exact"] = invariant;
        rep["idempotent_exact"] = idempotent;
        rep["tol"]["invariance"] = 0.0;
        ok = invariant && idempotent;
    }
    emit(rep, cfg.format, out);
    return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.command == "pin") return cmd_pin(cfg, out);
        if (cfg.command == "lambda") return cmd_lambda(cfg, out);
        if (cfg.command == "search") return cmd_search(cfg, out);
        if (cfg.command == "blowup") return cmd_blowup(cfg, out);
        if (cfg.command == "kobos") return cmd_kobos(cfg, out);
        if (cfg.command == "duality-fuzz") return cmd_duality_fuzz(cfg, out);
        if (cfg.command == "vn-check") return cmd_vn_check(cfg, out);
        if (cfg.command == "eps-limit") return cmd_eps_limit(cfg, out);
        if (cfg.command == "stabilizer") return cmd_stabilizer(cfg, out);
        err << "error: unknown command '" << cfg.command << "'\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const AmbiguousSignError& e) {
        err << "check failed: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const NumericalError& e) {
        err << "numerical check failed: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

}  // namespace projconst::cli
