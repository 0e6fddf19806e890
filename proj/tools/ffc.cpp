// ffc: free-fermion commutant laboratory, batch command-line frontend.
//
// Subcommands:
//   dims        commutant dimension tables, optionally cross-checked by ED
//   page-curve  averaged Renyi purities by four methods
//   check       structural invariant suites
//   kernel      export an orthonormal kernel basis
//
// Exit codes: 0 success, 1 check failure/mismatch, 2 usage error,
// 3 resource cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ffc/io.hpp"
#include "ffc/moments.hpp"
#include "ffc/suites.hpp"

using namespace ffc;
using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "ffc-1";

liealg::EnsembleKind parse_ensemble(const std::string& name) {
    if (name == "mg") return liealg::EnsembleKind::MG;
    if (name == "mgstar") return liealg::EnsembleKind::MGstar;
    if (name == "nc") return liealg::EnsembleKind::NC;
    if (name == "mg-flavored") return liealg::EnsembleKind::MG_flavored;
    if (name == "nc-flavored") return liealg::EnsembleKind::NC_flavored;
    throw CLI::ValidationError("--ensemble", "unknown ensemble '" + name + "'");
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FFC_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw CLI::ValidationError("FFC_SEED", "not a valid unsigned integer");
        }
    }
    return 1;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text;
}

// flat key=value config; command-line flags take precedence
std::vector<std::string> apply_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (config_path.empty()) return args;
    std::ifstream f(config_path);
    if (!f) throw std::runtime_error("cannot read config file " + config_path);
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        bool present = false;
        for (const auto& a : args)
            if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) present = true;
        if (!present) args.push_back("--" + key + "=" + value);
    }
    return args;
}

struct DimsOptions {
    std::string ensemble = "mg";
    int k = 1, L = 2, N = 1;
    bool verify_ed = false;
    std::string format = "csv", out, config;
};

int cmd_dims(const DimsOptions& opt) {
    liealg::EnsembleKind kind = parse_ensemble(opt.ensemble);
    liealg::bigint dim = liealg::commutant_dim(kind, opt.k, opt.L, opt.N);
    std::int64_t ed_dim = -1;
    bool match = true;
    if (opt.verify_ed) {
        effham::EnsembleSpec spec = effham::EnsembleSpec::chain(
            kind == liealg::EnsembleKind::MGstar ? liealg::EnsembleKind::MG : kind, opt.L, opt.N);
        effham::KernelResult kr =
            effham::kernel_basis(effham::effective_hamiltonian(spec, opt.k, opt.L));
        if (kind == liealg::EnsembleKind::MGstar) kr = effham::mgstar_restrict(kr, opt.k, opt.L);
        ed_dim = kr.dim();
        match = (dim == ed_dim);
    }
    std::ostringstream os;
    if (opt.format == "json") {
        json row = {{"ensemble", opt.ensemble}, {"k", opt.k}, {"L", opt.L}, {"dim", dim.str()}};
        if (opt.verify_ed) {
            row["ed_dim"] = ed_dim;
            row["verdict"] = match ? "MATCH" : "MISMATCH";
        }
        json doc = {{"schema_version", kSchemaVersion}, {"command", "dims"}, {"rows", {row}}};
        os << doc.dump(2) << "\n";
    } else {
        os << "ensemble,k,L,dim";
        if (opt.verify_ed) os << ",ed_dim,verdict";
        os << "\n" << opt.ensemble << "," << opt.k << "," << opt.L << "," << dim.str();
        if (opt.verify_ed) os << "," << ed_dim << "," << (match ? "MATCH" : "MISMATCH");
        os << "\n";
    }
    write_output(os.str(), opt.out);
    return match ? 0 : 1;
}

struct PageCurveOptions {
    std::string method = "exact-k2";
    int k = 2, L = 0;
    std::vector<int> ells;
    std::vector<double> rs;
    std::int64_t samples = 10000;
    std::uint64_t seed = 1;
    int threads = 2;
    std::string format = "csv", out, config;
};

int cmd_page_curve(const PageCurveOptions& opt) {
    // validate everything before any computation starts
    if (opt.method != "oracle" && opt.method != "coherent-mc" && opt.method != "exact-k2" &&
        opt.method != "saddle")
        throw CLI::ValidationError("--method", "unknown method '" + opt.method + "'");
    const bool needs_cut = opt.method != "saddle";
    if (needs_cut) {
        if (opt.L < 1) throw CLI::ValidationError("--L", "L >= 1 required");
        if (opt.ells.empty()) throw CLI::ValidationError("--ell", "at least one cut required");
        for (int ell : opt.ells)
            if (ell < 0 || ell > opt.L) throw CLI::ValidationError("--ell", "cut outside [0, L]");
    }
    if (opt.method == "exact-k2" && opt.k != 2)
        throw CLI::ValidationError("--k", "exact-k2 requires k = 2");
    if (opt.method == "coherent-mc" && opt.L % 2 != 0)
        throw CLI::ValidationError("--L", "coherent-mc requires even L");
    if ((opt.method == "oracle" || opt.method == "coherent-mc") && opt.samples < 1)
        throw CLI::ValidationError("--samples", "positive sample count required");
    if (opt.method == "oracle" && opt.L > moments::default_oracle_cap())
        throw resource_cap_error("oracle cap is L <= " +
                                 std::to_string(moments::default_oracle_cap()));
    if (opt.method == "saddle") {
        if (opt.k < 2) throw CLI::ValidationError("--k", "saddle requires k >= 2");
        if (opt.rs.empty()) throw CLI::ValidationError("--r", "at least one cut fraction required");
        for (double r : opt.rs)
            if (!(r > 0.0 && r < 1.0)) throw CLI::ValidationError("--r", "r in (0,1) required");
    }

    struct Row {
        std::string method;
        int k;
        double L, ell;
        double value, se;
        std::int64_t samples;
        std::uint64_t seed;
    };
    std::vector<Row> rows;
    if (opt.method == "saddle") {
        // for the saddle method the ell column carries the cut fraction r
        for (double r : opt.rs)
            rows.push_back(
                {opt.method, opt.k, 0, r, moments::rate_function(opt.k, r), 0.0, 0, opt.seed});
    } else {
        for (int ell : opt.ells) {
            Row row{opt.method, opt.k, double(opt.L), double(ell), 0.0, 0.0, 0, opt.seed};
            if (opt.method == "exact-k2") {
                row.value = moments::purity_exact_k2(opt.L, ell).convert_to<double>();
            } else if (opt.method == "oracle") {
                moments::MomentEstimate est =
                    moments::purity_oracle(opt.k, opt.L, ell, opt.samples, opt.seed, opt.threads);
                row.value = est.mean;
                row.se = est.stderr_of_mean;
                row.samples = est.n_samples;
            } else {
                moments::MomentEstimate est = moments::purity_coherent_mc(
                    opt.k, opt.L, ell, opt.samples, opt.seed, opt.threads);
                row.value = est.mean;
                row.se = est.stderr_of_mean;
                row.samples = est.n_samples;
            }
            rows.push_back(row);
        }
    }

    std::ostringstream os;
    if (opt.format == "json") {
        json jrows = json::array();
        for (const Row& r : rows)
            jrows.push_back({{"method", r.method},
                             {"k", r.k},
                             {"L", r.L},
                             {"ell", r.ell},
                             {"value", r.value},
                             {"stderr", r.se},
                             {"samples", r.samples},
                             {"seed", r.seed}});
        json doc = {{"schema_version", kSchemaVersion}, {"command", "page-curve"}, {"rows", jrows}};
        os << doc.dump(2) << "\n";
    } else {
        os << "method,k,L,ell,value,stderr,samples,seed\n";
        for (const Row& r : rows)
            os << r.method << "," << r.k << "," << io::fmt(r.L) << "," << io::fmt(r.ell) << ","
               << io::fmt(r.value) << "," << io::fmt(r.se) << "," << r.samples << "," << r.seed
               << "\n";
    }
    write_output(os.str(), opt.out);
    return 0;
}

struct CheckOptions {
    std::string suite = "all";
    std::string ensemble;
    int k = 0, L = 0;
    std::uint64_t seed = 1;
    int threads = 2;
    std::string format = "text", out, config;
};

int cmd_check(const CheckOptions& opt) {
    suites::SuiteOptions sopt;
    if (!opt.ensemble.empty()) sopt.ensemble = parse_ensemble(opt.ensemble);
    if (opt.k > 0) sopt.k = opt.k;
    if (opt.L > 0) sopt.L = opt.L;
    sopt.seed = opt.seed;
    sopt.threads = opt.threads;
    std::vector<suites::SuiteResult> results = suites::run_suites(opt.suite, sopt);
    bool all_pass = true;
    std::ostringstream os;
    if (opt.format == "json") {
        json jrows = json::array();
        for (const auto& r : results) {
            all_pass = all_pass && r.passed;
            jrows.push_back({{"suite", r.suite},
                             {"instance", r.instance},
                             {"passed", r.passed},
                             {"metric", r.metric},
                             {"detail", r.detail}});
        }
        json doc = {{"schema_version", kSchemaVersion}, {"command", "check"}, {"rows", jrows}};
        os << doc.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            all_pass = all_pass && r.passed;
            os << "SUITE " << r.suite << " [" << r.instance << "] "
               << (r.passed ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
        }
        os << (all_pass ? "ALL SUITES PASS" : "SUITE FAILURES PRESENT") << "\n";
    }
    write_output(os.str(), opt.out);
    return all_pass ? 0 : 1;
}

struct KernelOptions {
    std::string ensemble = "mg";
    int k = 1, L = 2, N = 1;
    std::string format = "csv", out, config;
};

int cmd_kernel(const KernelOptions& opt) {
    if (opt.out.empty()) throw CLI::ValidationError("--out", "output path required");
    liealg::EnsembleKind kind = parse_ensemble(opt.ensemble);
    effham::EnsembleSpec spec = effham::EnsembleSpec::chain(
        kind == liealg::EnsembleKind::MGstar ? liealg::EnsembleKind::MG : kind, opt.L, opt.N);
    effham::KernelResult kr =
        effham::kernel_basis(effham::effective_hamiltonian(spec, opt.k, opt.L));
    if (kind == liealg::EnsembleKind::MGstar) kr = effham::mgstar_restrict(kr, opt.k, opt.L);
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + opt.out);
    if (opt.format == "binary")
        io::export_kernel_binary(f, kr.basis);
    else
        io::export_kernel_csv(f, kr.basis);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free-fermion commutant laboratory"};
    app.require_subcommand(1);

    DimsOptions dims;
    CLI::App* cdims = app.add_subcommand("dims", "commutant dimension table");
    cdims->add_option("--ensemble", dims.ensemble, "mg|mgstar|nc|mg-flavored|nc-flavored");
    cdims->add_option("--k", dims.k, "replica parameter k")->check(CLI::PositiveNumber);
    cdims->add_option("--L", dims.L, "physical sites")->check(CLI::PositiveNumber);
    cdims->add_option("--N", dims.N, "flavor count")->check(CLI::PositiveNumber);
    cdims->add_flag("--verify-ed", dims.verify_ed, "cross-check by exact diagonalization");
    cdims->add_option("--format", dims.format, "csv|json");
    cdims->add_option("--out", dims.out, "output file (default stdout)");
    cdims->add_option("--config", dims.config, "flat key=value config file");

    PageCurveOptions pc;
    CLI::App* cpc = app.add_subcommand("page-curve", "averaged k-purities");
    cpc->add_option("--method", pc.method, "oracle|coherent-mc|exact-k2|saddle");
    cpc->add_option("--k", pc.k, "replica count");
    cpc->add_option("--L", pc.L, "physical sites");
    cpc->add_option("--ell", pc.ells, "cut positions (comma separated)")->delimiter(',');
    cpc->add_option("--r", pc.rs, "cut fractions for the saddle method")->delimiter(',');
    cpc->add_option("--samples", pc.samples, "Monte Carlo sample count");
    cpc->add_option("--seed", pc.seed, "master seed (default FFC_SEED or 1)");
    cpc->add_option("--threads", pc.threads, "worker cap (does not affect results)");
    cpc->add_option("--format", pc.format, "csv|json");
    cpc->add_option("--out", pc.out, "output file (default stdout)");
    cpc->add_option("--config", pc.config, "flat key=value config file");

    CheckOptions chk;
    CLI::App* cchk = app.add_subcommand("check", "invariant suites");
    cchk->add_option("--suite", chk.suite,
                     "all|anticommutation|casimir|lemma1|gaussianity|embedding|constraint|"
                     "normalization");
    cchk->add_option("--ensemble", chk.ensemble, "restrict to one ensemble");
    cchk->add_option("--k", chk.k, "restrict to one k");
    cchk->add_option("--L", chk.L, "restrict to one L");
    cchk->add_option("--seed", chk.seed, "master seed (default FFC_SEED or 1)");
    cchk->add_option("--threads", chk.threads, "worker cap");
    cchk->add_option("--format", chk.format, "text|json");
    cchk->add_option("--out", chk.out, "output file (default stdout)");
    cchk->add_option("--config", chk.config, "flat key=value config file");

    KernelOptions ker;
    CLI::App* cker = app.add_subcommand("kernel", "export a kernel basis");
    cker->add_option("--ensemble", ker.ensemble, "mg|mgstar|nc|mg-flavored|nc-flavored");
    cker->add_option("--k", ker.k, "replica parameter k")->check(CLI::PositiveNumber);
    cker->add_option("--L", ker.L, "physical sites")->check(CLI::PositiveNumber);
    cker->add_option("--N", ker.N, "flavor count")->check(CLI::PositiveNumber);
    cker->add_option("--format", ker.format, "csv|binary");
    cker->add_option("--out", ker.out, "output file (required)");
    cker->add_option("--config", ker.config, "flat key=value config file");

    bool seed_given = false;
    try {
        std::vector<std::string> args = apply_config(argc, argv);
        for (const auto& a : args)
            if (a.rfind("--seed", 0) == 0) seed_given = true;
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (!seed_given) {
        try {
            std::uint64_t s = default_seed();
            pc.seed = s;
            chk.seed = s;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    try {
        if (cdims->parsed()) return cmd_dims(dims);
        if (cpc->parsed()) return cmd_page_curve(pc);
        if (cchk->parsed()) return cmd_check(chk);
        if (cker->parsed()) return cmd_kernel(ker);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const resource_cap_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
