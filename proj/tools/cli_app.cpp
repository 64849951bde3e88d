#include "cli_app.hpp"

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include <novikov/betti.hpp>
#include <novikov/chain_complex.hpp>
#include <novikov/cz_index.hpp>
#include <novikov/error.hpp>
#include <novikov/json_io.hpp>
#include <novikov/torus.hpp>

namespace novikov::cli
{

namespace
{

struct Config {
    std::string preset;
    std::vector<std::string> inputs;
    std::string lattice;
    std::string theta;
    std::string output;
    std::string ops;
    std::size_t grid = 8;
    double newton_tol = 1e-10;
    double dedupe_radius = 1e-4;
    double degeneracy = 1e-8;
    std::optional<std::size_t> steps;
    std::size_t threads = 1;
    std::uint64_t seed = 1;
    bool densify = false;
};

void write_output(const Config& cfg, const Json& j, std::ostream& out)
{
    const std::string text = j.dump(2) + "\n";
    if (cfg.output.empty() || cfg.output == "-") {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
        throw ParseError(cfg.output + ": cannot write output file");
    }
    f << text;
}

WeightedLattice theta_lattice(const Config& cfg, std::size_t rank)
{
    if (!cfg.lattice.empty() && !cfg.theta.empty()) {
        throw ParseError("--theta and --lattice are mutually exclusive");
    }
    if (!cfg.lattice.empty()) {
        return lattice_from_json(read_json_file(cfg.lattice), cfg.lattice);
    }
    if (cfg.theta.empty()) {
        return WeightedLattice::zero_weight(rank);
    }
    const auto row = parse_rational_list(cfg.theta);
    if (row.size() != rank) {
        throw ParseError("--theta has " + std::to_string(row.size()) + " entries, the complex has rank "
                         + std::to_string(rank));
    }
    const bool zero = std::all_of(row.begin(), row.end(), [](const Rational& q) { return q == 0; });
    return zero ? WeightedLattice::zero_weight(rank) : WeightedLattice::rational_class(row);
}

int cmd_betti(const Config& cfg, std::ostream& out, std::ostream& err)
{
    GroupRingComplex complex;
    try {
        if (!cfg.preset.empty() && !cfg.inputs.empty()) {
            throw ParseError("--preset and --input are mutually exclusive");
        }
        if (!cfg.preset.empty()) {
            complex = preset_complex(cfg.preset);
        } else if (cfg.inputs.size() == 1) {
            complex = complex_from_json(read_json_file(cfg.inputs[0]), cfg.inputs[0]);
        } else {
            throw ParseError("betti needs --preset or exactly one --input");
        }
    } catch (const Error& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    }
    WeightedLattice theta;
    try {
        theta = theta_lattice(cfg, complex.nvars());
    } catch (const Error& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    }
    if (theta.rank() != complex.nvars()) {
        err << "parse error: lattice rank " << theta.rank() << " does not match complex rank " << complex.nvars() << "\n";
        return parse_error;
    }
    const auto v = validate_complex(complex);
    if (!v.valid) {
        err << "invalid complex: " << v.message << "\n";
        return invalid;
    }
    const BettiReport report = novikov_betti(complex, theta);

    // Randomized cross-check of every specialized boundary rank.
    const GroupRingComplex special = specialize_to_theta(complex, theta);
    Json check = Json::object();
    bool agree = true;
    for (const auto& [k, d] : special.boundaries()) {
        const std::size_t r = rank_by_random_evaluation(d, cfg.seed + static_cast<std::uint64_t>(k + 1000));
        check[std::to_string(k)] = r;
        agree = agree && r == report.boundary_ranks.at(k);
    }
    Json j = betti_report_to_json(report);
    j["random_evaluation_ranks"] = check;
    j["random_evaluation_agrees"] = agree;
    j["seed"] = cfg.seed;

    std::ostream& table = (cfg.output.empty() || cfg.output == "-") ? err : out;
    table << "field " << report.field << "\n";
    table << std::setw(8) << "degree" << std::setw(8) << "rank" << std::setw(8) << "b_k" << "\n";
    for (const auto& [k, b] : report.betti) {
        table << std::setw(8) << k << std::setw(8) << report.chain_ranks.at(k) << std::setw(8) << b << "\n";
    }
    table << "sum " << report.total() << "\n";
    write_output(cfg, j, out);
    return ok;
}

TorusSystem load_system(const Config& cfg)
{
    if (!cfg.preset.empty() && !cfg.inputs.empty()) {
        throw ParseError("--preset and --input are mutually exclusive");
    }
    TorusSystem s;
    if (!cfg.preset.empty()) {
        s = system_preset(cfg.preset);
    } else if (cfg.inputs.size() == 1) {
        s = system_from_json(read_json_file(cfg.inputs[0]), cfg.inputs[0]);
    } else {
        throw ParseError("needs --preset or exactly one --input");
    }
    if (cfg.steps) {
        s.steps = *cfg.steps;
    }
    if (!cfg.theta.empty()) {
        const auto row = parse_rational_list(cfg.theta);
        if (row.size() != s.dim()) {
            throw ParseError("--theta needs " + std::to_string(s.dim()) + " entries");
        }
        s.theta.clear();
        s.theta_text.clear();
        for (const auto& q : row) {
            s.theta.push_back(static_cast<double>(to_real(q)));
            s.theta_text.push_back(format_rational(q));
        }
    }
    return s;
}

OrbitSearchOptions search_options(const Config& cfg)
{
    OrbitSearchOptions o;
    o.grid = cfg.grid;
    o.newton_tol = cfg.newton_tol;
    o.dedupe_radius = cfg.dedupe_radius;
    o.degeneracy_threshold = cfg.degeneracy;
    return o;
}

void orbit_table(const std::vector<PeriodicOrbit>& orbits, std::ostream& out)
{
    out << std::setw(4) << "#" << "  " << std::setw(22) << "base" << "  " << std::setw(10) << "k" << "  "
        << std::setw(10) << "margin" << "  " << std::setw(6) << "cz" << "  " << "action" << "\n";
    std::size_t i = 0;
    for (const auto& o : orbits) {
        std::ostringstream base, k;
        base << std::fixed << std::setprecision(4);
        for (Eigen::Index c = 0; c < o.base.size(); ++c) {
            base << (c ? "," : "") << o.base(c);
        }
        for (std::size_t c = 0; c < o.displacement.size(); ++c) {
            k << (c ? "," : "") << o.displacement[c];
        }
        out << std::setw(4) << i++ << "  " << std::setw(22) << base.str() << "  " << std::setw(10) << k.str() << "  "
            << std::setw(10) << std::setprecision(4) << std::scientific << o.margin << std::defaultfloat << "  "
            << std::setw(6) << (o.cz_index ? std::to_string(*o.cz_index) : "-") << "  "
            << (o.action ? std::to_string(*o.action) : "-") << (o.degenerate ? "  degenerate" : "") << "\n";
    }
}

int cmd_orbits(const Config& cfg, std::ostream& out, std::ostream& err)
{
    TorusSystem s;
    try {
        s = load_system(cfg);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    }
    const auto opt = search_options(cfg);
    const OrbitSearchResult r = find_periodic_orbits(s, opt);
    std::ostream& table = (cfg.output.empty() || cfg.output == "-") ? err : out;
    orbit_table(r.orbits, table);
    for (const auto& o : r.orbits) {
        if (o.degenerate && o.contractible()) {
            table << "degenerate orbit: system outside scope\n";
            break;
        }
    }
    Json j = orbit_search_to_json(r, opt);
    j["system"] = system_to_json(s);
    write_output(cfg, j, out);
    return ok;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err)
{
    TorusSystem s;
    try {
        s = load_system(cfg);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    }
    VerifyOptions vo;
    vo.search = search_options(cfg);
    vo.densify = cfg.densify;
    const VerificationReport r = verify_main_theorem(s, vo);
    std::ostream& table = (cfg.output.empty() || cfg.output == "-") ? err : out;
    orbit_table(r.search.orbits, table);
    table << "contractible nondegenerate orbits " << r.contractible_orbits << ", Betti sum " << r.betti_sum
          << ", verdict " << to_string(r.verdict) << "\n";
    Json j = verification_to_json(r);
    j["system"] = system_to_json(s);
    write_output(cfg, j, out);
    switch (r.verdict) {
    case Verdict::pass:
        return ok;
    case Verdict::fail:
        return inequality_violated;
    case Verdict::hypothesis_violated:
        return hypothesis_violated;
    }
    return ok;
}

using Value = std::variant<TruncatedSeries<Rational>, GroupedSeries<Rational>>;

Value load_value(const std::string& path)
{
    const Json j = read_json_file(path);
    if (j.is_object() && j.contains("grouped")) {
        return grouped_from_json(j, path);
    }
    return series_from_json(j, path);
}

int cmd_ring(const Config& cfg, std::ostream& out, std::ostream& err)
{
    std::vector<Value> operands;
    std::vector<std::pair<std::string, std::string>> ops;
    try {
        if (cfg.inputs.empty()) {
            throw ParseError("ring needs at least one --input");
        }
        for (const auto& p : cfg.inputs) {
            operands.push_back(load_value(p));
        }
        std::stringstream ss(cfg.ops);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) {
                continue;
            }
            const auto colon = item.find(':');
            ops.emplace_back(item.substr(0, colon), colon == std::string::npos ? "" : item.substr(colon + 1));
        }
    } catch (const Error& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    }

    const auto series_operand = [&](const std::string& arg) -> TruncatedSeries<Rational> {
        std::size_t used = 0;
        std::size_t idx = 0;
        try {
            idx = std::stoul(arg, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != arg.size() || idx >= operands.size()) {
            throw ParseError("operand '" + arg + "' is not an input index");
        }
        if (!std::holds_alternative<TruncatedSeries<Rational>>(operands[idx])) {
            throw PreconditionError("operand " + arg + " is grouped");
        }
        return std::get<TruncatedSeries<Rational>>(operands[idx]);
    };

    Value current = operands.front();
    try {
        for (const auto& [name, arg] : ops) {
            if (name == "ungroup") {
                if (!std::holds_alternative<GroupedSeries<Rational>>(current)) {
                    throw PreconditionError("ungroup needs a grouped series");
                }
                current = series_ungroup(std::get<GroupedSeries<Rational>>(current));
                continue;
            }
            if (!std::holds_alternative<TruncatedSeries<Rational>>(current)) {
                throw PreconditionError(name + " needs an ungrouped series");
            }
            const auto a = std::get<TruncatedSeries<Rational>>(current);
            if (name == "regroup") {
                current = series_regroup(a, kernel_and_split(a.lattice()));
            } else if (name == "invert") {
                current = series_invert_unit(a, arg.empty() ? real_infinity() : parse_real(arg));
            } else if (name == "mul") {
                current = series_mul(a, series_operand(arg));
            } else if (name == "add") {
                current = series_add(a, series_operand(arg));
            } else if (name == "sub") {
                current = series_sub(a, series_operand(arg));
            } else if (name == "scale") {
                const Rational q = parse_rational(arg);
                current = series_scale(a, q);
            } else if (name == "truncate") {
                current = a.with_cutoff(parse_real(arg));
            } else {
                throw ParseError("unknown operation '" + name + "'");
            }
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const Error& e) {
        err << "precondition failed: " << e.what() << "\n";
        return invalid;
    }
    const Json j = std::holds_alternative<GroupedSeries<Rational>>(current)
                       ? grouped_to_json(std::get<GroupedSeries<Rational>>(current))
                       : series_to_json(std::get<TruncatedSeries<Rational>>(current));
    write_output(cfg, j, out);
    return ok;
}

int cmd_cz(const Config& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (cfg.inputs.size() != 1) {
            throw ParseError("cz needs exactly one --input");
        }
        const SymplecticPath p = path_from_json(read_json_file(cfg.inputs[0]), cfg.inputs[0]);
        const int mu = conley_zehnder(p);
        write_output(cfg, Json{{"n", p.n()}, {"samples", p.samples().size()}, {"cz_index", mu}}, out);
        return ok;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const PathError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return invalid;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config cfg;
    CLI::App app{"Novikov Betti numbers and periodic orbits of locally Hamiltonian torus systems", "novikov"};
    app.require_subcommand(1);

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--preset", cfg.preset, "built-in complex or system");
        sub->add_option("--input", cfg.inputs, "input JSON file (repeatable for ring)");
        sub->add_option("--output", cfg.output, "write the JSON report here instead of stdout");
        sub->add_option("--seed", cfg.seed, "seed for randomized checks");
        sub->add_option("--threads", cfg.threads, "accepted for compatibility; the search is sequential")
            ->check(CLI::PositiveNumber);
    };
    const auto dynamics = [&](CLI::App* sub) {
        sub->add_option("--theta", cfg.theta, "override theta, comma separated rationals");
        sub->add_option("--grid", cfg.grid, "seeds per coordinate (>= 4)")->capture_default_str();
        sub->add_option("--newton-tol", cfg.newton_tol)->capture_default_str();
        sub->add_option("--dedupe-radius", cfg.dedupe_radius)->capture_default_str();
        sub->add_option("--degeneracy", cfg.degeneracy, "threshold for |det(I - D)|")->capture_default_str();
        sub->add_option("--steps", cfg.steps, "RK4 steps per period (system value, 2048 if unset)");
    };

    auto* betti = app.add_subcommand("betti", "Novikov Betti numbers of a complex");
    common(betti);
    betti->add_option("--theta", cfg.theta, "period class as comma separated rationals");
    betti->add_option("--lattice", cfg.lattice, "weight lattice JSON (irrational classes)");

    auto* orbits = app.add_subcommand("orbits", "search periodic orbits of a torus system");
    common(orbits);
    dynamics(orbits);

    auto* verify = app.add_subcommand("verify", "check #orbits >= sum of Novikov Betti numbers");
    common(verify);
    dynamics(verify);
    verify->add_flag("--densify", cfg.densify, "repeat the search at twice the grid density");

    auto* ring = app.add_subcommand("ring", "series arithmetic on JSON inputs");
    common(ring);
    ring->add_option("--op", cfg.ops, "comma separated chain: invert:C, mul:i, add:i, sub:i, scale:q, truncate:C, "
                                      "regroup, ungroup");

    auto* cz = app.add_subcommand("cz", "Conley-Zehnder index of a sampled symplectic path");
    common(cz);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    }

    try {
        if (betti->parsed()) {
            return cmd_betti(cfg, out, err);
        }
        if (orbits->parsed()) {
            return cmd_orbits(cfg, out, err);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, out, err);
        }
        if (ring->parsed()) {
            return cmd_ring(cfg, out, err);
        }
        return cmd_cz(cfg, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return invalid;
    }
}

} // namespace novikov::cli
