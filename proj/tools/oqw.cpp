// oqw: tessellation quantum walks on oriented graphs from the command line.
//
// Subcommands: validate | simulate | sweep | analyze | optimize | compare.
// Exit codes: 0 success, 2 input/validation error, 1 internal error (or a
// compare run exceeding its tolerance).
//
// Every numeric output is printed with 17 significant digits and CSV files
// use LF endings, so identical configs produce byte-identical artifacts.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oqw/analytics.hpp"
#include "oqw/graph.hpp"
#include "oqw/io.hpp"
#include "oqw/operators.hpp"
#include "oqw/oracle.hpp"
#include "oqw/simulator.hpp"
#include "oqw/threads.hpp"
#include "oqw/transport.hpp"

namespace {

using oqw::Cx;
using oqw::format_g17;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------- config

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed config JSON: " + std::string(e.what()));
    }
}

// Flags always win over config values; config keys are the long option names
// with '-' replaced by '_'.
void cfg_string(const json& cfg, const char* key, const CLI::Option* opt, std::string& var) {
    if (opt->count() > 0 || !cfg.contains(key)) return;
    const json& v = cfg[key];
    if (v.is_string())
        var = v.get<std::string>();
    else if (v.is_number())
        var = format_g17(v.get<double>());
    else
        throw std::invalid_argument(std::string("config key '") + key +
                                    "' must be a string or number");
}

void cfg_int(const json& cfg, const char* key, const CLI::Option* opt, int& var) {
    if (opt->count() > 0 || !cfg.contains(key)) return;
    if (!cfg[key].is_number_integer())
        throw std::invalid_argument(std::string("config key '") + key + "' must be an integer");
    var = cfg[key].get<int>();
}

void cfg_uint64(const json& cfg, const char* key, const CLI::Option* opt, std::uint64_t& var) {
    if (opt->count() > 0 || !cfg.contains(key)) return;
    if (!cfg[key].is_number_integer())
        throw std::invalid_argument(std::string("config key '") + key + "' must be an integer");
    var = cfg[key].get<std::uint64_t>();
}

void cfg_bool(const json& cfg, const char* key, const CLI::Option* opt, bool& var) {
    if (opt->count() > 0 || !cfg.contains(key)) return;
    if (!cfg[key].is_boolean())
        throw std::invalid_argument(std::string("config key '") + key + "' must be a boolean");
    var = cfg[key].get<bool>();
}

// ---------------------------------------------------------------- families

struct FamilyArgs {
    std::string family;
    int half_window = 0;
    int n = 0;
};

oqw::WalkFamily build_family(const FamilyArgs& args) {
    if (args.family.empty()) throw std::invalid_argument("missing --family");
    if (args.family == "line-uniform" || args.family == "line-alternating") {
        if (args.half_window == 0)
            throw std::invalid_argument("line families need --half-window");
        return oqw::build_oriented_line(args.family == "line-uniform"
                                            ? oqw::LineVariant::uniform
                                            : oqw::LineVariant::alternating,
                                        args.half_window);
    }
    if (args.family == "lattice") {
        if (args.n == 0) throw std::invalid_argument("lattice family needs --n");
        oqw::LatticeSpec spec;
        spec.n = args.n;
        return oqw::build_oriented_lattice(spec);
    }
    if (args.family.rfind("file:", 0) == 0) return oqw::load_family_json(args.family.substr(5));
    throw std::invalid_argument("unknown family '" + args.family +
                                "' (line-uniform | line-alternating | lattice | file:<path>)");
}

// plus | corner4 | site:<v> | ab:<a_re>,<a_im>,<b_re>,<b_im>
std::pair<Cx, Cx> parse_ab(const std::string& spec) {
    std::vector<double> vals;
    std::string rest = spec.substr(3);
    size_t start = 0;
    for (size_t i = 0; i <= rest.size(); ++i) {
        if (i == rest.size() || rest[i] == ',') {
            vals.push_back(oqw::parse_angle(rest.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (vals.size() != 4)
        throw std::invalid_argument("ab: initial state needs 4 comma-separated numbers");
    return {Cx(vals[0], vals[1]), Cx(vals[2], vals[3])};
}

oqw::StateVector make_initial(const std::string& spec_in, const oqw::WalkFamily& fam) {
    const int n_vertices = fam.cover.host.vertex_count;
    std::string spec = spec_in;
    if (spec.empty()) {
        // per-family defaults: the standard starting states
        if (fam.kind == oqw::FamilyKind::lattice)
            spec = "corner4";
        else if (fam.kind == oqw::FamilyKind::custom)
            throw std::invalid_argument("custom families need an explicit --initial");
        else
            spec = "plus";
    }
    if (spec == "plus")
        return oqw::amplitude_pair_state(n_vertices, Cx(1, 0), Cx(1, 0));  // normalized inside
    if (spec == "corner4") {
        if (fam.kind != oqw::FamilyKind::lattice)
            throw std::invalid_argument("corner4 is a lattice initial state");
        oqw::LatticeSpec spec2;
        spec2.n = fam.n;
        return oqw::corner4_state(spec2);
    }
    if (spec.rfind("site:", 0) == 0) {
        int v = 0;
        try {
            v = std::stoi(spec.substr(5));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad site index in '" + spec + "'");
        }
        return oqw::basis_state(n_vertices, v);
    }
    if (spec.rfind("ab:", 0) == 0) {
        auto [a, b] = parse_ab(spec);
        return oqw::amplitude_pair_state(n_vertices, a, b);
    }
    throw std::invalid_argument("unknown initial state '" + spec +
                                "' (plus | corner4 | site:<v> | ab:<re>,<im>,<re>,<im>)");
}

// a,b amplitudes for the analytics layer (rates/optimize need the 1D pair)
std::pair<Cx, Cx> initial_pair(const std::string& spec_in) {
    std::string spec = spec_in.empty() ? "plus" : spec_in;
    if (spec == "plus") {
        const double r = 1.0 / std::sqrt(2.0);
        return {Cx(r, 0), Cx(r, 0)};
    }
    if (spec.rfind("ab:", 0) == 0) {
        auto [a, b] = parse_ab(spec);
        const double n = std::sqrt(std::norm(a) + std::norm(b));
        if (n == 0.0) throw std::invalid_argument("zero initial amplitudes");
        return {a / n, b / n};
    }
    throw std::invalid_argument("this command needs a two-amplitude initial state "
                                "(plus | ab:<re>,<im>,<re>,<im>)");
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    FamilyArgs fam;
    std::string alpha = "0";
    std::string theta = "0";
    std::string initial;
    int steps = 0;
    bool record = false;
    std::string out;
    std::string dump_step;
};

void emit_distribution_rows(const oqw::WalkFamily& fam,
                            const oqw::ProbabilityDistribution& dist,
                            const std::string& prefix, std::vector<std::string>& rows) {
    const bool is_line = fam.kind == oqw::FamilyKind::line_uniform ||
                         fam.kind == oqw::FamilyKind::line_alternating;
    if (is_line) {
        const int m = fam.half_window;
        for (int x = -m; x < m; ++x) {
            const int idx = ((x % (2 * m)) + 2 * m) % (2 * m);
            rows.push_back(prefix + std::to_string(x) + "," + format_g17(dist.probs[idx]));
        }
    } else if (fam.kind == oqw::FamilyKind::lattice) {
        const int side = 2 * fam.n;
        for (int y = 0; y < side; ++y)
            for (int x = 0; x < side; ++x)
                rows.push_back(prefix + std::to_string(x) + "," + std::to_string(y) + "," +
                               format_g17(dist.probs[side * y + x]));
    } else {
        for (size_t v = 0; v < dist.probs.size(); ++v)
            rows.push_back(prefix + std::to_string(v) + "," + format_g17(dist.probs[v]));
    }
}

std::string distribution_header(const oqw::WalkFamily& fam, bool with_t) {
    const bool is_line = fam.kind == oqw::FamilyKind::line_uniform ||
                         fam.kind == oqw::FamilyKind::line_alternating;
    std::string coords = is_line ? "x,probability"
                         : fam.kind == oqw::FamilyKind::lattice ? "x,y,probability"
                                                                : "vertex,probability";
    return with_t ? "t," + coords : coords;
}

void run_simulate(const SimulateArgs& args) {
    oqw::WalkFamily fam = build_family(args.fam);
    oqw::WalkParams params{oqw::parse_angle(args.alpha), oqw::parse_angle(args.theta)};
    oqw::StateVector psi0 = make_initial(args.initial, fam);

    oqw::EvolveOptions opts;
    opts.record_distributions = args.record;
    oqw::RunResult run = oqw::evolve(fam, params, psi0, args.steps, opts);

    if (run.aliasing_possible)
        std::cerr << "warning: t >= n/2, the light cone can wrap the torus; unwrapped "
                     "2D moments may mix wrapped probability mass\n";

    if (!args.dump_step.empty()) {
        if (fam.cover.host.vertex_count > 64)
            throw std::invalid_argument("--dump-step is limited to 64 vertices");
        Eigen::MatrixXcd u = oqw::assemble_dense_step(
            oqw::evolution_step_plan(fam.cover, params), fam.cover.host.vertex_count);
        std::vector<std::string> rows;
        for (int i = 0; i < u.rows(); ++i)
            for (int j = 0; j < u.cols(); ++j)
                rows.push_back(std::to_string(i) + "," + std::to_string(j) + "," +
                               format_g17(u(i, j).real()) + "," + format_g17(u(i, j).imag()));
        oqw::write_csv(args.dump_step, "i,j,re,im", rows);
    }

    oqw::ProbabilityDistribution final_dist = oqw::distribution(run.final_state);
    if (!args.out.empty()) {
        std::vector<std::string> rows;
        if (args.record) {
            for (int t = 0; t < static_cast<int>(run.per_step.size()); ++t)
                emit_distribution_rows(fam, run.per_step[t], std::to_string(t) + ",", rows);
        } else {
            emit_distribution_rows(fam, final_dist, "", rows);
        }
        oqw::write_csv(args.out, distribution_header(fam, args.record), rows);
    }

    // summary
    std::cout << "t = " << args.steps << "  alpha = " << format_g17(params.alpha)
              << "  theta = " << format_g17(params.theta) << "\n";
    if (fam.kind == oqw::FamilyKind::custom) {
        std::cout << "norm = " << format_g17(run.final_state.norm()) << "\n";
        return;
    }
    oqw::TransportStats st = oqw::stats_for_family(fam, final_dist);
    if (st.two_d) {
        std::cout << "mean = (" << format_g17(st.mean_x) << ", " << format_g17(st.mean_y)
                  << ")  mu = " << format_g17(st.mu) << "  sigma = " << format_g17(st.sigma)
                  << "\n";
    } else {
        const double t = std::max(1, args.steps);
        std::cout << "<x> = " << format_g17(st.mean_x)
                  << "  |<x>|/t = " << format_g17(std::abs(st.mean_x) / t)
                  << "  <x^2>/t^2 = " << format_g17(st.mean_x2 / (t * t))
                  << "  sigma = " << format_g17(st.sigma) << "\n";
    }
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    FamilyArgs fam;
    std::string alpha_grid;
    std::string theta_grid;
    std::string initial;
    int steps = 0;
    std::string out;
};

void run_sweep(const SweepArgs& args) {
    if (args.alpha_grid.empty() && args.theta_grid.empty())
        throw std::invalid_argument("sweep needs --alpha-grid and/or --theta-grid");
    oqw::WalkFamily fam = build_family(args.fam);
    // defaults when only one grid is given: alpha = 0 (no orientation phase),
    // theta = pi/4 (balanced hopping -- theta = 0 would sweep the identity walk)
    std::vector<double> alphas =
        args.alpha_grid.empty() ? std::vector<double>{0.0} : oqw::parse_grid(args.alpha_grid);
    std::vector<double> thetas =
        args.theta_grid.empty() ? std::vector<double>{kPi / 4} : oqw::parse_grid(args.theta_grid);
    oqw::StateVector psi0 = make_initial(args.initial, fam);

    std::vector<oqw::SweepRow> rows = oqw::sweep(fam, alphas, thetas, psi0, args.steps);

    if (!rows.empty() && rows.front().aliasing_possible)
        std::cerr << "warning: t >= n/2, the light cone can wrap the torus; unwrapped "
                     "2D moments may mix wrapped probability mass\n";

    const bool two_d = !rows.empty() && rows.front().two_d;
    std::vector<std::string> lines;
    lines.reserve(rows.size());
    for (const auto& r : rows) {
        std::string line = std::to_string(args.steps) + "," + format_g17(r.alpha) + "," +
                           format_g17(r.theta) + "," + format_g17(r.mean_x);
        if (two_d) line += "," + format_g17(r.mean_y) + "," + format_g17(r.mu);
        line += "," + format_g17(r.x2) + "," + format_g17(r.sigma);
        if (two_d) line += "," + format_g17(r.sigma_x) + "," + format_g17(r.sigma_y);
        lines.push_back(line);
    }
    const std::string header = two_d
                                   ? "t,alpha,theta,mean_x,mean_y,mu,x2,sigma,sigma_x,sigma_y"
                                   : "t,alpha,theta,mean_x,x2,sigma";
    if (!args.out.empty()) oqw::write_csv(args.out, header, lines);

    // point the user at the most mobile row
    size_t best = 0;
    for (size_t i = 1; i < rows.size(); ++i) {
        const double vi = two_d ? rows[i].mu : std::abs(rows[i].mean_x);
        const double vb = two_d ? rows[best].mu : std::abs(rows[best].mean_x);
        if (vi > vb) best = i;
    }
    if (!rows.empty()) {
        std::cout << "rows = " << rows.size() << "\n";
        std::cout << (two_d ? "max mu" : "max |mean_x|") << " at alpha = "
                  << format_g17(rows[best].alpha) << ", theta = " << format_g17(rows[best].theta)
                  << ": " << format_g17(two_d ? rows[best].mu : std::abs(rows[best].mean_x))
                  << "\n";
    }
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
    std::string what;  // dispersion | rates | reduced
    std::string model = "line1";
    std::string alpha = "0";
    std::string theta = "0";
    std::string alpha_grid;
    std::string theta_grid;
    std::string initial;
    int k_count = 401;
    int n = 0;
    std::string out;
};

void run_analyze(const AnalyzeArgs& args) {
    if (args.out.empty()) throw std::invalid_argument("analyze needs --out");

    if (args.what == "dispersion") {
        if (args.model != "line1" && args.model != "line2")
            throw std::invalid_argument("dispersion supports --model line1|line2");
        const oqw::LineModel model =
            args.model == "line1" ? oqw::LineModel::line1 : oqw::LineModel::line2;
        oqw::WalkParams p{oqw::parse_angle(args.alpha), oqw::parse_angle(args.theta)};
        if (args.k_count < 2) throw std::invalid_argument("--k-count must be >= 2");
        std::vector<std::string> rows;
        for (int i = 0; i < args.k_count; ++i) {
            const double k = -kPi + 2 * kPi * i / (args.k_count - 1);
            rows.push_back(format_g17(k) + "," + format_g17(oqw::dispersion(model, k, p)));
        }
        oqw::write_csv(args.out, "k,lambda", rows);
        std::cout << "wrote " << rows.size() << " dispersion samples to " << args.out << "\n";
        return;
    }

    if (args.what == "rates") {
        auto [a, b] = initial_pair(args.initial);
        if (args.alpha_grid.empty() || args.theta_grid.empty())
            throw std::invalid_argument("rates needs --alpha-grid and --theta-grid");
        std::vector<double> alphas = oqw::parse_grid(args.alpha_grid);
        std::vector<double> thetas = oqw::parse_grid(args.theta_grid);
        std::vector<std::string> rows;
        for (double alpha : alphas) {
            for (double theta : thetas) {
                oqw::WalkParams p{alpha, theta};
                rows.push_back(format_g17(alpha) + "," + format_g17(theta) + "," +
                               format_g17(oqw::asymptotic_mean_line1(a, b, p)) + "," +
                               format_g17(oqw::asymptotic_second_moment(p)));
            }
        }
        oqw::write_csv(args.out, "alpha,theta,mean_rate,x2_rate", rows);
        std::cout << "wrote " << rows.size() << " rate rows to " << args.out << "\n";
        return;
    }

    if (args.what == "reduced") {
        oqw::WalkParams p{oqw::parse_angle(args.alpha), oqw::parse_angle(args.theta)};
        std::vector<std::string> rows;
        auto entries = [](const Eigen::Matrix2cd& u) {
            std::string s;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    s += "," + format_g17(u(i, j).real()) + "," + format_g17(u(i, j).imag());
            return s;
        };
        if (args.model == "lattice") {
            if (args.n <= 1) throw std::invalid_argument("reduced lattice needs --n > 1");
            for (int k = 0; k < 2 * args.n; ++k)
                for (int l = 0; l < 2 * args.n; ++l)
                    rows.push_back(std::to_string(k) + "," + std::to_string(l) +
                                   entries(oqw::reduced_u_lattice(k, l, args.n, p)));
            oqw::write_csv(args.out,
                           "k,l,re00,im00,re01,im01,re10,im10,re11,im11", rows);
        } else if (args.model == "line1" || args.model == "line2") {
            const oqw::LineModel model =
                args.model == "line1" ? oqw::LineModel::line1 : oqw::LineModel::line2;
            if (args.k_count < 2) throw std::invalid_argument("--k-count must be >= 2");
            for (int i = 0; i < args.k_count; ++i) {
                const double k = -kPi + 2 * kPi * i / (args.k_count - 1);
                rows.push_back(format_g17(k) + entries(oqw::reduced_u_line(model, k, p)));
            }
            oqw::write_csv(args.out, "k,re00,im00,re01,im01,re10,im10,re11,im11", rows);
        } else {
            throw std::invalid_argument("reduced supports --model line1|line2|lattice");
        }
        std::cout << "wrote " << rows.size() << " reduced-operator rows to " << args.out << "\n";
        return;
    }

    throw std::invalid_argument("unknown --what '" + args.what +
                                "' (dispersion | rates | reduced)");
}

// ---------------------------------------------------------------- optimize

void run_optimize(const std::string& initial) {
    auto [a, b] = initial_pair(initial);
    oqw::TransportOptimum opt = oqw::optimize_line_transport(a, b);
    std::cout << "alpha_star = " << format_g17(opt.alpha) << "\n"
              << "sin_alpha_star = " << format_g17(std::sin(opt.alpha)) << "\n"
              << "theta_star = " << format_g17(opt.theta) << "\n"
              << "cos_theta_star = " << format_g17(std::cos(opt.theta)) << "\n"
              << "rate = " << format_g17(opt.rate) << "\n"
              << "abs_rate = " << format_g17(std::abs(opt.rate)) << "\n";
}

// ---------------------------------------------------------------- compare

double compare_cover(const oqw::TessellationCover& cover, oqw::oracle::TestRng& rng,
                     int param_draws) {
    double worst = 0.0;
    for (int i = 0; i < param_draws; ++i) {
        oqw::WalkParams p{rng.uniform(0, 2 * kPi), rng.uniform(0, kPi)};
        Eigen::MatrixXcd prod = oqw::assemble_dense_step(oqw::evolution_step_plan(cover, p),
                                                         cover.host.vertex_count);
        Eigen::MatrixXcd ref = oqw::oracle::dense_step(cover, p);
        worst = std::max(worst, (prod - ref).cwiseAbs().maxCoeff());
    }
    return worst;
}

int run_compare(std::uint64_t seed, int trials) {
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
    oqw::oracle::TestRng rng(seed);

    double worst_random = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = 2 + rng.below(11);  // N in [2, 12]
        oqw::TessellationCover cover = oqw::oracle::random_oriented_cover(n, rng);
        worst_random = std::max(worst_random, compare_cover(cover, rng, 5));
    }

    const double worst_lu = compare_cover(
        oqw::build_oriented_line(oqw::LineVariant::uniform, 4).cover, rng, 5);
    const double worst_la = compare_cover(
        oqw::build_oriented_line(oqw::LineVariant::alternating, 4).cover, rng, 5);
    oqw::LatticeSpec spec;
    spec.n = 2;
    const double worst_lat = compare_cover(oqw::build_oriented_lattice(spec).cover, rng, 5);

    const double overall = std::max({worst_random, worst_lu, worst_la, worst_lat});
    const double tol = 1e-10;
    std::cout << "random oriented graphs (" << trials
              << " trials): max |block - oracle| = " << format_g17(worst_random) << "\n";
    std::cout << "line uniform M=4:      max |block - oracle| = " << format_g17(worst_lu) << "\n";
    std::cout << "line alternating M=4:  max |block - oracle| = " << format_g17(worst_la) << "\n";
    std::cout << "lattice n=2:           max |block - oracle| = " << format_g17(worst_lat)
              << "\n";
    std::cout << "overall max = " << format_g17(overall) << "  tolerance = " << format_g17(tol)
              << "  -> " << (overall <= tol ? "OK" : "FAIL") << "\n";
    return overall <= tol ? 0 : 1;
}

// ---------------------------------------------------------------- validate

int run_validate(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();

    // parse without validating so every violation can be reported at once
    oqw::WalkFamily fam = oqw::family_from_json_text(buf.str(), /*validate=*/false);

    bool bad = false;
    oqw::ValidationReport g = oqw::validate_oriented(fam.cover.host);
    for (const auto& v : g.violations) std::cout << "error: " << v << "\n";
    bad = bad || !g.ok;

    for (size_t i = 0; i < fam.cover.tessellations.size() && g.ok; ++i) {
        oqw::ValidationReport tr =
            oqw::validate_tessellation(fam.cover.host, fam.cover.tessellations[i]);
        for (const auto& v : tr.violations)
            std::cout << "error: tessellation " << i << ": " << v << "\n";
        bad = bad || !tr.ok;
    }

    if (!bad && !fam.cover.tessellations.empty()) {
        oqw::ValidationReport cr = oqw::validate_cover(fam.cover);
        for (const auto& v : cr.violations) std::cout << "warning: " << v << "\n";
    }

    if (bad) return 2;
    std::cout << "ok: " << fam.cover.host.vertex_count << " vertices, "
              << fam.cover.host.arcs.size() << " arcs, " << fam.cover.tessellations.size()
              << " tessellations\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        oqw::apply_thread_env();

        CLI::App app{"tessellation quantum walks on oriented graphs"};
        app.require_subcommand(1);

        // ---- validate
        std::string val_file;
        CLI::App* val = app.add_subcommand("validate", "check a JSON graph/cover file");
        val->add_option("--file", val_file, "graph JSON document")->required();

        // ---- simulate
        SimulateArgs sim;
        std::string sim_config;
        CLI::App* simc = app.add_subcommand("simulate", "evolve a state and write distributions");
        auto* sim_fam = simc->add_option("--family", sim.fam.family,
                                         "line-uniform | line-alternating | lattice | file:<path>");
        auto* sim_alpha = simc->add_option("--alpha", sim.alpha, "orientation phase (radians or pi-expression)");
        auto* sim_theta = simc->add_option("--theta", sim.theta, "hopping angle");
        auto* sim_steps = simc->add_option("--steps", sim.steps, "number of walk steps");
        auto* sim_initial = simc->add_option("--initial", sim.initial,
                                             "plus | corner4 | site:<v> | ab:<re>,<im>,<re>,<im>");
        auto* sim_hw = simc->add_option("--half-window", sim.fam.half_window,
                                        "line window M (cycle of 2M vertices)");
        auto* sim_n = simc->add_option("--n", sim.fam.n, "lattice parameter (side 2n)");
        auto* sim_rec = simc->add_flag("--record-distributions", sim.record,
                                       "CSV gets one block per step (long format)");
        auto* sim_out = simc->add_option("--out", sim.out, "CSV output path");
        auto* sim_dump = simc->add_option("--dump-step", sim.dump_step,
                                          "dump the dense step operator (CSV i,j,re,im; N <= 64)");
        simc->add_option("--config", sim_config, "JSON config file (flags override)");

        // ---- sweep
        SweepArgs swp;
        std::string swp_config;
        CLI::App* swpc = app.add_subcommand("sweep", "evolve over a parameter grid");
        auto* swp_fam = swpc->add_option("--family", swp.fam.family, "family as in simulate");
        auto* swp_ag = swpc->add_option("--alpha-grid", swp.alpha_grid, "a:b:step or single value");
        auto* swp_tg = swpc->add_option("--theta-grid", swp.theta_grid, "a:b:step or single value");
        auto* swp_steps = swpc->add_option("--steps", swp.steps, "number of walk steps");
        auto* swp_initial = swpc->add_option("--initial", swp.initial, "initial state spec");
        auto* swp_hw = swpc->add_option("--half-window", swp.fam.half_window, "line window M");
        auto* swp_n = swpc->add_option("--n", swp.fam.n, "lattice parameter");
        auto* swp_out = swpc->add_option("--out", swp.out, "CSV output path");
        swpc->add_option("--config", swp_config, "JSON config file (flags override)");

        // ---- analyze
        AnalyzeArgs ana;
        std::string ana_config;
        CLI::App* anac = app.add_subcommand("analyze", "closed-form tables (CSV)");
        auto* ana_what = anac->add_option("--what", ana.what, "dispersion | rates | reduced");
        auto* ana_model = anac->add_option("--model", ana.model, "line1 | line2 | lattice");
        auto* ana_alpha = anac->add_option("--alpha", ana.alpha, "orientation phase");
        auto* ana_theta = anac->add_option("--theta", ana.theta, "hopping angle");
        auto* ana_ag = anac->add_option("--alpha-grid", ana.alpha_grid, "grid for rates");
        auto* ana_tg = anac->add_option("--theta-grid", ana.theta_grid, "grid for rates");
        auto* ana_init = anac->add_option("--initial", ana.initial, "plus | ab:... (rates)");
        auto* ana_kc = anac->add_option("--k-count", ana.k_count, "samples over [-pi, pi]");
        auto* ana_n = anac->add_option("--n", ana.n, "lattice parameter (reduced)");
        auto* ana_out = anac->add_option("--out", ana.out, "CSV output path");
        anac->add_option("--config", ana_config, "JSON config file (flags override)");

        // ---- optimize
        std::string opt_initial;
        CLI::App* optc = app.add_subcommand("optimize",
                                            "maximize |asymptotic rate| over (alpha, theta)");
        optc->add_option("--initial", opt_initial, "plus | ab:<re>,<im>,<re>,<im>");

        // ---- compare
        std::uint64_t cmp_seed = 42;
        int cmp_trials = 50;
        std::string cmp_config;
        CLI::App* cmpc = app.add_subcommand("compare",
                                            "block-structured step vs dense series oracle");
        auto* cmp_seed_opt = cmpc->add_option("--seed", cmp_seed, "RNG seed");
        auto* cmp_trials_opt = cmpc->add_option("--trials", cmp_trials, "random-graph trials");
        cmpc->add_option("--config", cmp_config, "JSON config file (flags override)");

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? 0 : 2;
        }

        if (app.got_subcommand(val)) return run_validate(val_file);

        if (app.got_subcommand(simc)) {
            if (!sim_config.empty()) {
                json cfg = load_config(sim_config);
                cfg_string(cfg, "family", sim_fam, sim.fam.family);
                cfg_string(cfg, "alpha", sim_alpha, sim.alpha);
                cfg_string(cfg, "theta", sim_theta, sim.theta);
                cfg_int(cfg, "steps", sim_steps, sim.steps);
                cfg_string(cfg, "initial", sim_initial, sim.initial);
                cfg_int(cfg, "half_window", sim_hw, sim.fam.half_window);
                cfg_int(cfg, "n", sim_n, sim.fam.n);
                cfg_bool(cfg, "record_distributions", sim_rec, sim.record);
                cfg_string(cfg, "out", sim_out, sim.out);
                cfg_string(cfg, "dump_step", sim_dump, sim.dump_step);
            }
            run_simulate(sim);
            return 0;
        }

        if (app.got_subcommand(swpc)) {
            if (!swp_config.empty()) {
                json cfg = load_config(swp_config);
                cfg_string(cfg, "family", swp_fam, swp.fam.family);
                cfg_string(cfg, "alpha_grid", swp_ag, swp.alpha_grid);
                cfg_string(cfg, "theta_grid", swp_tg, swp.theta_grid);
                cfg_int(cfg, "steps", swp_steps, swp.steps);
                cfg_string(cfg, "initial", swp_initial, swp.initial);
                cfg_int(cfg, "half_window", swp_hw, swp.fam.half_window);
                cfg_int(cfg, "n", swp_n, swp.fam.n);
                cfg_string(cfg, "out", swp_out, swp.out);
            }
            run_sweep(swp);
            return 0;
        }

        if (app.got_subcommand(anac)) {
            if (!ana_config.empty()) {
                json cfg = load_config(ana_config);
                cfg_string(cfg, "what", ana_what, ana.what);
                cfg_string(cfg, "model", ana_model, ana.model);
                cfg_string(cfg, "alpha", ana_alpha, ana.alpha);
                cfg_string(cfg, "theta", ana_theta, ana.theta);
                cfg_string(cfg, "alpha_grid", ana_ag, ana.alpha_grid);
                cfg_string(cfg, "theta_grid", ana_tg, ana.theta_grid);
                cfg_string(cfg, "initial", ana_init, ana.initial);
                cfg_int(cfg, "k_count", ana_kc, ana.k_count);
                cfg_int(cfg, "n", ana_n, ana.n);
                cfg_string(cfg, "out", ana_out, ana.out);
            }
            run_analyze(ana);
            return 0;
        }

        if (app.got_subcommand(optc)) {
            run_optimize(opt_initial);
            return 0;
        }

        if (app.got_subcommand(cmpc)) {
            if (!cmp_config.empty()) {
                json cfg = load_config(cmp_config);
                cfg_uint64(cfg, "seed", cmp_seed_opt, cmp_seed);
                cfg_int(cfg, "trials", cmp_trials_opt, cmp_trials);
            }
            return run_compare(cmp_seed, cmp_trials);
        }

        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
