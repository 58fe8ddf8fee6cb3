#include "bkw/height.hpp"
#include "bkw/lattice.hpp"
#include "bkw/random_cluster.hpp"
#include "bkw/report.hpp"
#include "bkw/six_vertex.hpp"
#include "bkw/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace {

using bkw::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int env_workers() {
    const char* v = std::getenv("BKW_WORKERS");
    if (v == nullptr || *v == '\0') return 1;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 1024) throw UsageError("BKW_WORKERS must be a positive integer");
    return static_cast<int>(n);
}

double parse_q(const std::string& text) {
    try {
        std::size_t used = 0;
        const double q = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return q;
    } catch (const std::logic_error&) {
        throw UsageError("--q expects a number or 'symbolic', got '" + text + "'");
    }
}

void emit(const std::string& path, const json& j) { bkw::write_text(path, j.dump(2)); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-cluster / six-vertex coupling toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    std::string domain_spec = "diamond:1";
    std::string q_text = "symbolic";
    std::string backend = "symbolic";
    std::string out = "-";
    bool timing = false;
    std::uint64_t seed = 1;

    auto* verify_coupling = app.add_subcommand("verify-coupling", "Check the Split coupling exactly on a small domain");
    verify_coupling->add_option("--domain", domain_spec, "diamond:R, diamond:R@i,j or box:N")->capture_default_str();
    verify_coupling->add_option("--q", q_text, "'symbolic' or a value >= 4")->capture_default_str();
    verify_coupling->add_option("--backend", backend, "symbolic or float")
        ->check(CLI::IsMember({"symbolic", "float"}))
        ->capture_default_str();
    verify_coupling->add_option("--out", out, "report path, - for stdout")->capture_default_str();
    verify_coupling->add_flag("--timing", timing, "include wall times in the report");
    int max_edges = 14;
    int max_c = 20;
    verify_coupling->add_option("--max-edges", max_edges, "primal edge budget")->capture_default_str();
    verify_coupling->add_option("--max-c-vertices", max_c, "c-vertex budget per configuration")->capture_default_str();

    auto* verify_identities = app.add_subcommand("verify-identities", "Check the combinatorial identities exhaustively");
    int random_pairs = 0;
    verify_identities->add_option("--domain", domain_spec)->capture_default_str();
    verify_identities->add_option("--random-pairs", random_pairs, "extra random winding checks")->capture_default_str();
    verify_identities->add_option("--seed", seed)->capture_default_str();
    verify_identities->add_option("--max-edges", max_edges)->capture_default_str();
    verify_identities->add_option("--out", out)->capture_default_str();
    verify_identities->add_flag("--timing", timing);

    auto* holley = app.add_subcommand("holley", "Check the Holley lattice condition between two boundary weights");
    std::string hq = "9", hp = "0.75", hqb = "1", hqb2 = "9";
    holley->add_option("--q", hq)->capture_default_str();
    holley->add_option("--p", hp)->capture_default_str();
    holley->add_option("--qb", hqb, "boundary weight of the first measure")->capture_default_str();
    holley->add_option("--qb2", hqb2, "boundary weight of the second measure")->capture_default_str();
    holley->add_option("--domain", domain_spec)->capture_default_str();
    std::string holley_backend = "float";
    holley->add_option("--backend", holley_backend, "float or exact")
        ->check(CLI::IsMember({"float", "exact"}))
        ->capture_default_str();
    holley->add_option("--out", out)->capture_default_str();

    auto* sample = app.add_subcommand("sample", "Run the heat-bath sampler");
    double sq = 10.0, sp = -1.0, sqb = -1.0;
    std::string boundary = "free";
    int box = 16, sweeps = 1000, burn_in = 200;
    std::string start = "closed";
    sample->add_option("--q", sq)->capture_default_str();
    sample->add_option("--p", sp, "edge weight (default: critical point)");
    sample->add_option("--qb", sqb, "boundary cluster weight (overrides --boundary)");
    sample->add_option("--boundary", boundary)->check(CLI::IsMember({"free", "wired"}))->capture_default_str();
    sample->add_option("--box", box)->capture_default_str();
    sample->add_option("--sweeps", sweeps)->capture_default_str();
    sample->add_option("--burn-in", burn_in)->capture_default_str();
    sample->add_option("--start", start)->check(CLI::IsMember({"open", "closed"}))->capture_default_str();
    sample->add_option("--seed", seed)->capture_default_str();
    sample->add_option("--out", out)->capture_default_str();

    auto* drift = app.add_subcommand("drift", "Height increments along nested clusters");
    bkw::DriftOptions dopt;
    double dq = 10.0;
    double dlambda = std::nan("");
    std::string csv;
    drift->add_option("--q", dq)->capture_default_str();
    drift->add_option("--lambda", dlambda, "loop bias (default: arccosh(sqrt(q)/2))");
    drift->add_option("--box", dopt.box)->capture_default_str();
    drift->add_option("--samples", dopt.samples)->capture_default_str();
    drift->add_option("--chains", dopt.chains)->capture_default_str();
    drift->add_option("--burn-in", dopt.burn_in)->capture_default_str();
    drift->add_option("--thin", dopt.thin)->capture_default_str();
    drift->add_option("--seed", seed)->capture_default_str();
    drift->add_option("--csv", csv, "increment CSV path");
    drift->add_option("--out", out, "summary JSON path")->capture_default_str();

    auto* params = app.add_subcommand("params", "Coupled parameters for a given q >= 4");
    double pq = 10.0;
    params->add_option("--q", pq)->capture_default_str();
    params->add_option("--out", out)->capture_default_str();

    auto* dump6v = app.add_subcommand("dump-6v", "Write all six-vertex configurations of a domain");
    dump6v->add_option("--domain", domain_spec)->capture_default_str();
    dump6v->add_option("--out", out)->capture_default_str();

    auto* dump_loops = app.add_subcommand("dump-loops", "Write the loops of every bond configuration as JSON lines");
    dump_loops->add_option("--domain", domain_spec)->capture_default_str();
    dump_loops->add_option("--out", out)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        const int workers = env_workers();

        if (verify_coupling->parsed()) {
            const bkw::Domain domain = bkw::parse_domain_spec(domain_spec);
            bkw::CouplingCheckOptions opt;
            opt.backend = backend == "float" ? bkw::Backend::Float : bkw::Backend::Symbolic;
            opt.verify.workers = workers;
            opt.verify.max_fk_edges = max_edges;
            opt.verify.max_c_vertices = max_c;
            json extra;
            if (q_text != "symbolic") {
                const auto cp = bkw::verify_coupled_params(parse_q(q_text));
                opt.lambdas = {cp.lambda};
                extra = bkw::to_json(cp);
            } else if (opt.backend == bkw::Backend::Float) {
                throw UsageError("the float backend needs a numeric --q");
            }
            const auto rep = bkw::verify_coupling(domain, opt);
            json j = bkw::to_json(rep, timing);
            j["backend"] = backend;
            j["q"] = q_text;
            if (!extra.is_null()) j["coupled"] = extra;
            emit(out, j);
            return rep.passed() ? kPass : kFail;
        }

        if (verify_identities->parsed()) {
            const bkw::Domain domain = bkw::parse_domain_spec(domain_spec);
            bkw::IdentityCheckOptions opt;
            opt.max_fk_edges = max_edges;
            opt.random_pairs = random_pairs;
            opt.seed = seed;
            const auto rep = bkw::verify_identities(domain, opt);
            emit(out, bkw::to_json(rep, timing));
            return rep.passed() ? kPass : kFail;
        }

        if (holley->parsed()) {
            const bkw::Domain domain = bkw::parse_domain_spec(domain_spec);
            json j;
            j["domain"] = json::parse(domain.descriptor_json());
            j["backend"] = holley_backend;
            bkw::HolleyResult r;
            if (holley_backend == "exact") {
                const mpq_class q = bkw::parse_rational(hq), p = bkw::parse_rational(hp);
                mpq_class a = bkw::parse_rational(hqb), b = bkw::parse_rational(hqb2);
                if (a > b) std::swap(a, b);
                bkw::RationalFKParams hi{p, q, a}, lo{p, q, b};
                hi.validate();
                lo.validate();
                r = bkw::holley_check(lo, hi, domain);
                j["params"] = {{"p", bkw::rational_string(p)}, {"q", bkw::rational_string(q)}};
                j["dominating_q_b"] = bkw::rational_string(a);
                j["dominated_q_b"] = bkw::rational_string(b);
            } else {
                const double q = parse_q(hq), p = bkw::parse_rational(hp).get_d();
                double a = bkw::parse_rational(hqb).get_d(), b = bkw::parse_rational(hqb2).get_d();
                if (a > b) std::swap(a, b);
                const bkw::FKParams hi{p, q, a}, lo{p, q, b};
                hi.validate();
                lo.validate();
                r = bkw::holley_check(lo, hi, domain);
                j["params"] = {{"p", bkw::format_double(p)}, {"q", bkw::format_double(q)}};
                j["dominating_q_b"] = bkw::format_double(a);
                j["dominated_q_b"] = bkw::format_double(b);
            }
            j["result"] = bkw::to_json(r);
            emit(out, j);
            return r.holds ? kPass : kFail;
        }

        if (sample->parsed()) {
            const bkw::Domain domain = bkw::make_box_domain(box);
            bkw::FKParams fp;
            fp.q = sq;
            fp.p = sp < 0 ? bkw::critical_p(sq) : sp;
            fp.q_b = sqb > 0 ? sqb : (boundary == "wired" ? 1.0 : sq);
            const auto rep = bkw::run_sampler(domain, fp, sweeps, burn_in, seed, start == "open", -1);
            json j = bkw::to_json(rep);
            j["box"] = box;
            emit(out, j);
            return kPass;
        }

        if (drift->parsed()) {
            dopt.q = dq;
            dopt.lambda = std::isnan(dlambda) ? bkw::verify_coupled_params(dq).lambda : dlambda;
            dopt.seed = seed;
            dopt.workers = workers;
            const auto res = bkw::drift_experiment(dopt);
            if (!csv.empty()) {
                std::ofstream f(csv);
                if (!f) throw std::runtime_error("cannot write " + csv);
                bkw::write_drift_csv(f, res);
            }
            json j = bkw::drift_summary(res);
            const bool ok = res.count > 1 && std::abs(res.mean - res.tanh_lambda) <= 3.0 * res.stderr_;
            j["within_3_stderr"] = ok;
            emit(out, j);
            return ok ? kPass : kFail;
        }

        if (params->parsed()) {
            emit(out, bkw::to_json(bkw::verify_coupled_params(pq)));
            return kPass;
        }

        if (dump6v->parsed() || dump_loops->parsed()) {
            const bkw::Domain domain = bkw::parse_domain_spec(domain_spec);
            std::ostringstream buf;
            if (dump6v->parsed()) bkw::write_6v_dump(buf, domain, bkw::enumerate_6v_all(domain));
            else bkw::write_loops_jsonl(buf, domain);
            std::string text = buf.str();
            if (!text.empty() && text.back() == '\n') text.pop_back();
            bkw::write_text(out, text);
            return kPass;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << " (use a smaller domain or raise the budget)\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    }
    return kUsage;
}
