#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ga/io.hpp"
#include "ga/random_gen.hpp"
#include "ga/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_identity_failure = 1;
constexpr int exit_parse_error = 2;
constexpr int exit_numeric_error = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ga::parse_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct InputFlags {
    std::string input_path;
    std::vector<std::string> csv_paths;
    double eps = 0.0;
    bool json = false;
};

ga::InputDocument load_document(const InputFlags& flags) {
    ga::InputDocument doc;
    if (!flags.input_path.empty()) {
        doc = ga::parse_input_json(slurp(flags.input_path));
    } else if (flags.csv_paths.size() == 2) {
        doc = ga::parse_input_csv(slurp(flags.csv_paths[0]),
                                  slurp(flags.csv_paths[1]));
    } else {
        throw ga::parse_error("provide --input PATH or --csv A.csv B.csv");
    }
    double identity_eps = doc.tol.identity();
    if (const char* env = std::getenv("BLADE_ANGLES_EPS")) {
        identity_eps = std::atof(env);
    }
    if (flags.eps > 0.0) identity_eps = flags.eps;
    doc.tol = ga::Tolerance(doc.tol.structural(), identity_eps);
    return doc;
}

void add_input_flags(CLI::App* cmd, InputFlags& flags) {
    cmd->add_option("--input", flags.input_path,
                    "structured JSON input document");
    cmd->add_option("--csv", flags.csv_paths,
                    "two CSV files (rows are the A and B frame vectors)")
        ->expected(2);
    cmd->add_option("--eps", flags.eps, "override the identity tolerance");
    cmd->add_flag("--json", flags.json, "machine-readable output");
}

void emit(const ga::Report& report, bool json) {
    std::cout << (json ? ga::render_report_json(report)
                       : ga::render_report_text(report));
}

void fill_flags(ga::Report& report, const ga::AngleBivector& phi) {
    if (phi.basis_dependent()) {
        report.flags.push_back(
            "angle bivector is not unique for this pair (a principal basis "
            "choice was fixed deterministically)");
    }
}

int run_angles(const InputFlags& flags) {
    const ga::InputDocument doc = load_document(flags);
    const ga::PreparedInput in = ga::prepare_input(doc);
    ga::Report report;
    report.input = doc;
    report.angles = ga::oriented_angles(in.a, in.b, doc.tol);
    report.principal = ga::principal_data(in.a, in.b, doc.tol);
    emit(report, flags.json);
    return exit_ok;
}

int run_product(const InputFlags& flags) {
    const ga::InputDocument doc = load_document(flags);
    const ga::PreparedInput in = ga::prepare_input(doc);
    ga::Report report;
    report.input = doc;
    const ga::Multivector ar = ga::reverse(in.a.mv());
    report.products.emplace_back("reverse_a_times_b",
                                 ga::geometric_product(ar, in.b.mv()));
    report.products.emplace_back("a_left_contraction_b",
                                 ga::left_contraction(in.a.mv(), in.b.mv()));
    report.products.emplace_back("a_outer_b",
                                 ga::outer_product(in.a.mv(), in.b.mv()));
    report.products.emplace_back("a_anticommutator_b",
                                 ga::anticommutator(in.a.mv(), in.b.mv()));
    report.products.emplace_back("a_commutator_b",
                                 ga::commutator(in.a.mv(), in.b.mv()));
    const ga::AngleBivector phi = ga::oriented_angle_bivector(in.a, in.b, doc.tol);
    report.exp_phi = ga::exp_angle_bivector(phi);
    report.plucker = ga::plucker_full_coordinates(phi);
    fill_flags(report, phi);
    emit(report, flags.json);
    return exit_ok;
}

int run_bivector(const InputFlags& flags) {
    const ga::InputDocument doc = load_document(flags);
    const ga::PreparedInput in = ga::prepare_input(doc);
    ga::Report report;
    report.input = doc;
    const ga::AngleBivector phi = ga::oriented_angle_bivector(in.a, in.b, doc.tol);
    report.principal = ga::principal_data(in.a, in.b, doc.tol);
    report.bivector = phi;
    report.exp_phi = ga::exp_angle_bivector(phi);
    report.plucker = ga::plucker_decomposition(phi);
    fill_flags(report, phi);
    emit(report, flags.json);
    return exit_ok;
}

int run_geodesic(const InputFlags& flags, int steps) {
    if (steps < 2) throw ga::parse_error("--steps must be at least 2");
    const ga::InputDocument doc = load_document(flags);
    const ga::PreparedInput in = ga::prepare_input(doc);
    ga::Report report;
    report.input = doc;
    const ga::PrincipalData pd = ga::principal_data(in.a, in.b, doc.tol);
    const ga::AngleBivector phi = ga::angle_bivector_from(pd, in.alg);
    const ga::Blade start = ga::certify_blade(pd.e_blade(in.alg), doc.tol);
    for (int k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) / (steps - 1);
        const ga::Blade sample = ga::geodesic_sample(phi, start, t, doc.tol);
        report.geodesic_frames.emplace_back(t, sample.subspace());
    }
    fill_flags(report, phi);
    emit(report, flags.json);
    return exit_ok;
}

int run_hitzer(const InputFlags& flags) {
    const ga::InputDocument doc = load_document(flags);
    const ga::PreparedInput in = ga::prepare_input(doc);
    ga::Report report;
    report.input = doc;

    // Normalize to unit blades with nonnegative pairing before recovering;
    // when the pairing vanishes only the angles are meaningful.
    ga::Blade a = ga::blade_from_frame(in.v, 1.0, in.alg);
    ga::Blade b = ga::blade_from_frame(in.w, 1.0, in.alg);
    if (a.grade() > b.grade()) std::swap(a, b);
    const double pairing = ga::scalar_product(ga::reverse(a.mv()), b.mv());
    if (pairing < 0.0) {
        b = ga::blade_from_frame(b.subspace(), -1.0, in.alg);
    } else if (pairing == 0.0) {
        report.flags.push_back(
            "pairing of the unit blades vanishes: orientation is basis "
            "dependent, angles remain valid");
    }
    const ga::Multivector product =
        ga::geometric_product(ga::reverse(a.mv()), b.mv());
    report.products.emplace_back("reverse_a_times_b", product);
    report.recovery =
        ga::hitzer_recover(product, a.grade(), b.grade(), doc.tol);
    emit(report, flags.json);
    return exit_ok;
}

int run_verify(std::uint64_t seed, int trials, int nmax, double eps,
               bool json) {
    if (trials < 1) throw ga::parse_error("--trials must be at least 1");
    if (nmax < 2 || nmax > ga::Algebra::max_dim) {
        throw ga::parse_error("--nmax must be in [2, 14]");
    }
    ga::VerifyOptions options;
    options.seed = seed;
    options.trials = trials;
    options.nmax = nmax;
    double identity_eps = 1e-9;
    if (const char* env = std::getenv("BLADE_ANGLES_EPS")) {
        identity_eps = std::atof(env);
    }
    if (eps > 0.0) identity_eps = eps;
    options.tol = ga::Tolerance(1e-10, identity_eps);
    options.inject_fault = std::getenv("BLADE_ANGLES_FAULT") != nullptr;

    const ga::VerifySummary summary = ga::run_verification(options);
    std::cout << (json ? ga::format_verify_json(summary, options)
                       : ga::format_verify_text(summary));
    return summary.all_passed ? exit_ok : exit_identity_failure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"relative inclination of subspaces: angles, angle "
                 "bivectors, blade products, geodesics"};
    app.require_subcommand(1);

    InputFlags angle_flags, product_flags, bivector_flags, geodesic_flags,
        hitzer_flags;
    int steps = 2;
    std::uint64_t seed = 42;
    int trials = 100;
    int nmax = 6;
    double verify_eps = 0.0;
    bool verify_json = false;

    CLI::App* cmd_angles =
        app.add_subcommand("angles", "scalar angle functionals of the pair");
    add_input_flags(cmd_angles, angle_flags);

    CLI::App* cmd_product = app.add_subcommand(
        "product", "blade products with Pluecker coordinates");
    add_input_flags(cmd_product, product_flags);

    CLI::App* cmd_bivector = app.add_subcommand(
        "bivector", "angle bivector, its exponential and coordinates");
    add_input_flags(cmd_bivector, bivector_flags);

    CLI::App* cmd_geodesic = app.add_subcommand(
        "geodesic", "sample the minimal geodesic between the subspaces");
    add_input_flags(cmd_geodesic, geodesic_flags);
    cmd_geodesic->add_option("--steps", steps, "number of samples (>= 2)");

    CLI::App* cmd_hitzer = app.add_subcommand(
        "hitzer", "recover principal angles from the blade product alone");
    add_input_flags(cmd_hitzer, hitzer_flags);

    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "run the seeded random identity verification suite");
    cmd_verify->add_option("--seed", seed, "RNG seed");
    cmd_verify->add_option("--trials", trials, "number of random trials");
    cmd_verify->add_option("--nmax", nmax, "largest ambient dimension");
    cmd_verify->add_option("--eps", verify_eps, "identity tolerance override");
    cmd_verify->add_flag("--json", verify_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_parse_error;
    }

    try {
        if (cmd_angles->parsed()) return run_angles(angle_flags);
        if (cmd_product->parsed()) return run_product(product_flags);
        if (cmd_bivector->parsed()) return run_bivector(bivector_flags);
        if (cmd_geodesic->parsed()) return run_geodesic(geodesic_flags, steps);
        if (cmd_hitzer->parsed()) return run_hitzer(hitzer_flags);
        if (cmd_verify->parsed()) {
            return run_verify(seed, trials, nmax, verify_eps, verify_json);
        }
    } catch (const ga::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse_error;
    } catch (const ga::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric_error;
    }
    return exit_parse_error;
}
