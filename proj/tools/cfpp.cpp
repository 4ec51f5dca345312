// cfpp — tables, moments, dependence reports and Monte Carlo validation
// for three compound counting processes (Bell-Touchard,
// Poisson-logarithmic, generalized Polya-Aeppli), their fractional
// versions, and the finite counting engine.
//
// Exit codes: 0 success, 1 statistical failure (validate), 2 usage or
// parameter error, 3 numerical-regime error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfpp/cfpp.hpp"

using ojson = nlohmann::ordered_json;

namespace {

// ---- numeric formatting -------------------------------------------------

// all numeric output carries 15 significant digits
std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// json numbers are rounded through the same 15-digit representation so
// csv and json artifacts agree and re-emission is byte-stable
ojson jnum(double v) { return ojson(std::strtod(fmt15(v).c_str(), nullptr)); }

// ---- resolved run configuration ------------------------------------------

struct ResolvedConfig {
    ojson values;                 // the meta block, in emission order
    std::set<std::string> from;  // keys that were explicitly provided (flag or config)

    bool has(const std::string& key) const { return values.contains(key); }
    double num(const std::string& key) const { return values.at(key).get<double>(); }
    long integer(const std::string& key) const { return values.at(key).get<long>(); }
    std::string str(const std::string& key) const { return values.at(key).get<std::string>(); }
};

struct CliFlags {
    std::string config_path;
    std::string process;
    std::optional<double> alpha, theta, lambda, p, rho, r;
    std::string rates;
    std::optional<double> beta, t, s;
    std::optional<long> n_max, n_samples;
    std::optional<std::uint64_t> seed;
    std::string method, format, output, t_grid, times;
    std::optional<double> z_threshold, p_floor;
};

// keys every process accepts, in meta emission order
const std::vector<std::string> kBtpKeys{"alpha", "theta"};
const std::vector<std::string> kPlpKeys{"lambda", "p"};
const std::vector<std::string> kGpapKeys{"lambda", "rho", "r"};

std::vector<double> parse_rates(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw cfpp::domain_error("rates: cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw cfpp::domain_error("rates: empty list");
    return out;
}

std::vector<double> parse_grid(const std::string& spec) {
    // start:stop:kind:count with kind in {geometric, linear}
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4)
        throw cfpp::domain_error("t-grid: expected start:stop:kind:count, got '" + spec + "'");
    double lo, hi;
    long count;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        count = std::stol(parts[3]);
    } catch (const std::exception&) {
        throw cfpp::domain_error("t-grid: cannot parse '" + spec + "'");
    }
    if (!(lo > 0.0 && hi > lo)) throw cfpp::domain_error("t-grid: need 0 < start < stop");
    if (count < 2) throw cfpp::domain_error("t-grid: need at least two points");
    std::vector<double> grid(count);
    if (parts[2] == "geometric") {
        for (long i = 0; i < count; ++i)
            grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    } else if (parts[2] == "linear") {
        for (long i = 0; i < count; ++i)
            grid[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    } else {
        throw cfpp::domain_error("t-grid: unknown kind '" + parts[2] +
                                 "' (use geometric or linear)");
    }
    return grid;
}

std::vector<double> parse_times(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw cfpp::domain_error("times: cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw cfpp::domain_error("times: empty list");
    return out;
}

// ---- config file ---------------------------------------------------------

ojson load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cfpp::domain_error("config: cannot open '" + path + "'");
    ojson j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw cfpp::domain_error("config: invalid JSON in '" + path + "': " + e.what());
    }
    // a full artifact can be re-fed: its meta block is the configuration
    if (j.contains("meta")) j = j.at("meta");
    if (!j.is_object()) throw cfpp::domain_error("config: expected a JSON object");
    return j;
}

// ---- resolution: flags override config values, then defaults -------------

class Resolver {
public:
    Resolver(const std::string& command, const ojson& config) : config_(config) {
        out_.values["command"] = command;
        out_.values["version"] = cfpp::version;
        if (config_.contains("command") &&
            config_.at("command").get<std::string>() != command)
            throw cfpp::domain_error("config: was produced by command '" +
                                     config_.at("command").get<std::string>() +
                                     "', not '" + command + "'");
    }

    template <class T>
    void put(const std::string& key, const std::optional<T>& flag,
             const std::optional<T>& fallback, bool required) {
        if (flag.has_value()) {
            set(key, *flag);
            out_.from.insert(key);
        } else if (config_.contains(key)) {
            set(key, config_.at(key).get<T>());
            out_.from.insert(key);
        } else if (fallback.has_value()) {
            set(key, *fallback);
        } else if (required) {
            throw cfpp::domain_error(key + ": required but not given (flag or config)");
        }
    }

    void put_string(const std::string& key, const std::string& flag,
                    const std::optional<std::string>& fallback, bool required) {
        std::optional<std::string> f;
        if (!flag.empty()) f = flag;
        put<std::string>(key, f, fallback, required);
    }

    bool provided(const std::string& key) const { return out_.from.count(key) > 0; }
    void put_placeholder(const std::string& key) { out_.values[key] = nullptr; }
    ResolvedConfig take() && { return std::move(out_); }

private:
    void set(const std::string& key, double v) { out_.values[key] = jnum(v); }
    void set(const std::string& key, long v) { out_.values[key] = v; }
    void set(const std::string& key, std::uint64_t v) { out_.values[key] = v; }
    void set(const std::string& key, const std::string& v) { out_.values[key] = v; }

    const ojson& config_;
    ResolvedConfig out_;
};

cfpp::ProcessParams build_params(const ResolvedConfig& rc) {
    const std::string proc = rc.str("process");
    cfpp::ProcessParams params;
    if (proc == "btp")
        params = cfpp::BellTouchardParams{rc.num("alpha"), rc.num("theta")};
    else if (proc == "plp")
        params = cfpp::PoissonLogParams{rc.num("lambda"), rc.num("p")};
    else if (proc == "gpap")
        params = cfpp::PolyaAeppliParams{rc.num("lambda"), rc.num("rho"), rc.num("r")};
    else if (proc == "gcp")
        params = cfpp::CountingRatesParams{parse_rates(rc.str("rates"))};
    else
        throw cfpp::domain_error("process: unknown process '" + proc +
                                 "' (use btp, plp, gpap or gcp)");
    cfpp::validate(params);
    return params;
}

// parameter keys must exactly match the selected process
void resolve_process_params(Resolver& r, const CliFlags& f, const ojson& config) {
    std::optional<double> none;
    r.put<std::string>("process", f.process.empty() ? std::nullopt
                                                    : std::optional<std::string>(f.process),
                       std::nullopt, true);

    struct Key {
        const char* name;
        const std::optional<double>* flag;
    };
    const std::vector<Key> all{{"alpha", &f.alpha}, {"theta", &f.theta}, {"lambda", &f.lambda},
                               {"p", &f.p},         {"rho", &f.rho},     {"r", &f.r}};

    std::string proc = f.process;
    if (proc.empty() && config.contains("process")) proc = config.at("process").get<std::string>();
    const std::vector<std::string>* allowed = nullptr;
    if (proc == "btp") allowed = &kBtpKeys;
    else if (proc == "plp") allowed = &kPlpKeys;
    else if (proc == "gpap") allowed = &kGpapKeys;
    else if (proc == "gcp") allowed = nullptr;
    else throw cfpp::domain_error("process: unknown process '" + proc + "'");

    const auto is_allowed = [&](const std::string& k) {
        if (proc == "gcp") return k == "rates";
        for (const auto& a : *allowed)
            if (a == k) return true;
        return false;
    };

    // reject stray parameters from flags or config
    for (const auto& key : all)
        if (key.flag->has_value() && !is_allowed(key.name))
            throw cfpp::domain_error(std::string(key.name) + ": not a parameter of process '" +
                                     proc + "'");
    if (!f.rates.empty() && proc != "gcp")
        throw cfpp::domain_error("rates: not a parameter of process '" + proc + "'");
    for (const auto& k : {"alpha", "theta", "lambda", "p", "rho", "r", "rates"})
        if (config.contains(k) && !is_allowed(k))
            throw cfpp::domain_error(std::string(k) + ": not a parameter of process '" + proc +
                                     "'");

    if (proc == "gcp") {
        r.put_string("rates", f.rates, std::nullopt, true);
    } else {
        for (const auto& name : *allowed) {
            const std::optional<double>* flag = &none;
            for (const auto& key : all)
                if (name == key.name) flag = key.flag;
            r.put<double>(name, *flag, std::nullopt, true);
        }
    }
}

// ---- artifact emission ----------------------------------------------------

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<ojson>> rows;
};

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += table.columns[c];
        out += (c + 1 < table.columns.size()) ? ',' : '\n';
    }
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            const ojson& v = row[c];
            if (v.is_number_float())
                out += fmt15(v.get<double>());
            else if (v.is_string())
                out += v.get<std::string>();
            else
                out += v.dump();
            out += (c + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

std::string render_json(const ResolvedConfig& rc, const Table& table) {
    ojson doc;
    doc["meta"] = rc.values;
    doc["data"] = ojson::array();
    for (const auto& row : table.rows) {
        ojson r;
        for (std::size_t c = 0; c < row.size(); ++c) r[table.columns[c]] = row[c];
        doc["data"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

void emit(const ResolvedConfig& rc, const Table& table, const std::string& output) {
    const std::string body =
        rc.str("format") == "json" ? render_json(rc, table) : render_csv(table);
    if (output.empty()) {
        std::cout << body;
        return;
    }
    std::filesystem::path path(output);
    if (path.is_relative())
        if (const char* dir = std::getenv("CFPP_OUTPUT_DIR"); dir && *dir)
            path = std::filesystem::path(dir) / path;
    std::ofstream out(path);
    if (!out) throw cfpp::domain_error("output: cannot open '" + path.string() + "' for writing");
    out << body;
}

// ---- subcommands ----------------------------------------------------------

cfpp::PmfTable make_table(const ResolvedConfig& rc, const cfpp::ProcessParams& params) {
    const double beta = rc.num("beta");
    const double t = rc.num("t");
    const int n_max = static_cast<int>(rc.integer("n_max"));
    const auto method = cfpp::parse_method(rc.str("method"));
    const bool classical_method =
        method == cfpp::PmfMethod::recurrence || method == cfpp::PmfMethod::partition ||
        method == cfpp::PmfMethod::composition || method == cfpp::PmfMethod::convolution;
    if (beta == 1.0 && classical_method) return cfpp::classical_pmf(params, t, n_max, method);
    return cfpp::frac_pmf(cfpp::make_fractional(params, beta), t, n_max, method);
}

int cmd_pmf(const ResolvedConfig& rc, const std::string& output) {
    const auto params = build_params(rc);
    const auto table = make_table(rc, params);
    Table out;
    out.columns = {"n", "probability", "method", "tail_bound"};
    for (int n = 0; n <= table.n_max; ++n)
        out.rows.push_back({ojson(n), jnum(table.probs[n]), ojson(cfpp::to_string(table.method)),
                            jnum(table.tail_bound)});
    emit(rc, out, output);
    return 0;
}

int cmd_moments(const ResolvedConfig& rc, const std::string& output) {
    const auto params = build_params(rc);
    const double beta = rc.num("beta");
    const double t = rc.num("t");
    const auto m = beta == 1.0 ? cfpp::classical_moments(params, t)
                               : cfpp::frac_moments(cfpp::make_fractional(params, beta), t);
    Table out;
    out.columns = {"t", "mean", "variance"};
    out.rows.push_back({jnum(t), jnum(m.mean), jnum(m.variance)});
    emit(rc, out, output);
    return 0;
}

int cmd_lrd(const ResolvedConfig& rc, const std::string& output) {
    const auto params = build_params(rc);
    const auto grid = parse_grid(rc.str("t_grid"));
    const auto proc = cfpp::make_fractional(params, rc.num("beta"));
    const auto rep = cfpp::correlation_decay(proc, rc.num("s"), grid);
    Table out;
    out.columns = {"t", "correlation", "fitted_exponent", "c0"};
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i)
        out.rows.push_back(
            {jnum(rep.t_grid[i]), jnum(rep.corr[i]), jnum(rep.fitted_exponent), jnum(rep.c0)});
    emit(rc, out, output);
    return 0;
}

int cmd_sample(const ResolvedConfig& rc, const std::string& output) {
    const auto params = build_params(rc);
    const double beta = rc.num("beta");
    const long n_samples = rc.integer("n_samples");
    cfpp::detail::require(n_samples >= 1, "n_samples: must be >= 1");
    cfpp::Rng rng(static_cast<std::uint64_t>(rc.integer("seed")));
    Table out;
    if (rc.has("times")) {
        const auto times = parse_times(rc.str("times"));
        const cfpp::FractionalSampler sampler(cfpp::make_fractional(params, beta));
        out.columns = {"path", "time", "count"};
        for (long i = 0; i < n_samples; ++i) {
            const auto path = sampler.sample_path(times, rng);
            for (std::size_t j = 0; j < path.times.size(); ++j)
                out.rows.push_back(
                    {ojson(i), jnum(path.times[j]), ojson(path.counts[j])});
        }
    } else {
        const double t = rc.num("t");
        out.columns = {"draw", "value"};
        if (beta == 1.0) {
            const cfpp::ClassicalSampler sampler(params);
            for (long i = 0; i < n_samples; ++i)
                out.rows.push_back({ojson(i), ojson(sampler.sample(t, rng))});
        } else {
            const cfpp::FractionalSampler sampler(cfpp::make_fractional(params, beta));
            for (long i = 0; i < n_samples; ++i)
                out.rows.push_back({ojson(i), ojson(sampler.sample(t, rng))});
        }
    }
    emit(rc, out, output);
    return 0;
}

int suggest_n_max(const cfpp::ProcessParams& params, double beta, double t, long n_samples) {
    // cover everything that is not pooled anyway: mass below ~1/(10 n)
    const double target = 0.1 / static_cast<double>(n_samples);
    const cfpp::PmfTable probe =
        beta == 1.0 ? cfpp::classical_pmf(params, t, 200)
                    : cfpp::frac_pmf(cfpp::make_fractional(params, beta), t, 200);
    double cum = 0.0;
    for (int n = 0; n <= 200; ++n) {
        cum += probe.probs[n];
        if (1.0 - cum < target) return std::max(n, 5);
    }
    return 200;
}

int cmd_validate(ResolvedConfig& rc, const std::string& output) {
    const auto params = build_params(rc);
    const double beta = rc.num("beta");
    const double t = rc.num("t");
    const long n_samples = rc.integer("n_samples");

    int n_max;
    if (rc.has("n_max") && !rc.values.at("n_max").is_null()) {
        n_max = static_cast<int>(rc.integer("n_max"));
    } else {
        n_max = suggest_n_max(params, beta, t, n_samples);
        rc.values["n_max"] = static_cast<long>(n_max);
    }

    const cfpp::PmfTable table =
        beta == 1.0 ? cfpp::classical_pmf(params, t, n_max)
                    : cfpp::frac_pmf(cfpp::make_fractional(params, beta), t, n_max);

    cfpp::SimConfig sim;
    sim.n_samples = n_samples;
    sim.seed = static_cast<std::uint64_t>(rc.integer("seed"));

    std::vector<long> hist;
    if (beta == 1.0) {
        const cfpp::ClassicalSampler sampler(params);
        hist = cfpp::mc_histogram([&](cfpp::Rng& r) { return sampler.sample(t, r); }, n_max, sim);
    } else {
        const cfpp::FractionalSampler sampler(cfpp::make_fractional(params, beta));
        hist = cfpp::mc_histogram([&](cfpp::Rng& r) { return sampler.sample(t, r); }, n_max, sim);
    }
    const auto rep =
        cfpp::compare_pmf(hist, table, n_samples, rc.num("z_threshold"), rc.num("p_floor"));

    Table out;
    out.columns = {"n",   "analytic_p", "empirical_p", "std_error", "z",
                   "max_abs_z", "chi_square", "dof", "p_value", "pass"};
    for (int n = 0; n <= n_max; ++n)
        out.rows.push_back({ojson(n), jnum(rep.analytic_p[n]), jnum(rep.empirical_p[n]),
                            jnum(rep.std_error[n]),
                            std::isnan(rep.z[n]) ? ojson("") : jnum(rep.z[n]),
                            jnum(rep.max_abs_z), jnum(rep.chi_square), ojson(rep.dof),
                            jnum(rep.p_value), ojson(rep.pass)});
    emit(rc, out, output);
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compound (fractional) counting process toolkit"};
    app.require_subcommand(1);

    CliFlags f;
    const auto add_common = [&](CLI::App* cmd, bool with_beta = true) {
        cmd->add_option("--config", f.config_path, "JSON config file (flags take precedence)");
        cmd->add_option("--process", f.process, "btp | plp | gpap | gcp");
        cmd->add_option("--alpha", f.alpha, "btp: jump scale");
        cmd->add_option("--theta", f.theta, "btp: jump shape");
        cmd->add_option("--lambda", f.lambda, "plp/gpap: event rate");
        cmd->add_option("--p", f.p, "plp: logarithmic-law parameter in (0,1)");
        cmd->add_option("--rho", f.rho, "gpap: negative-binomial parameter in (0,1)");
        cmd->add_option("--r", f.r, "gpap: negative-binomial order > 0");
        cmd->add_option("--rates", f.rates, "gcp: comma-separated jump rates");
        if (with_beta) cmd->add_option("--beta", f.beta, "fractional order in (0,1], default 1");
        cmd->add_option("--format", f.format, "csv | json (default csv)");
        cmd->add_option("--output", f.output,
                        "output file (relative paths land in $CFPP_OUTPUT_DIR)");
    };

    auto* pmf = app.add_subcommand("pmf", "exact probability table");
    add_common(pmf);
    pmf->add_option("--t", f.t, "time");
    pmf->add_option("--n-max", f.n_max, "largest state (default 20)");
    pmf->add_option("--method", f.method,
                    "recurrence | partition | composition | convolution | theta | lambda | "
                    "closed_form");

    auto* moments = app.add_subcommand("moments", "mean and variance");
    add_common(moments);
    moments->add_option("--t", f.t, "time");

    auto* lrd = app.add_subcommand("lrd", "correlation decay report");
    add_common(lrd);
    lrd->add_option("--s", f.s, "fixed earlier time");
    lrd->add_option("--t-grid", f.t_grid, "start:stop:kind:count, kind geometric|linear");

    auto* sample = app.add_subcommand("sample", "raw draws or paths");
    add_common(sample);
    sample->add_option("--t", f.t, "time for single draws");
    sample->add_option("--times", f.times, "comma-separated grid: emit paths instead of draws");
    sample->add_option("--n-samples", f.n_samples, "number of draws/paths (default 1)");
    sample->add_option("--seed", f.seed, "RNG seed (required)");

    auto* validate = app.add_subcommand("validate", "Monte Carlo vs analytic table");
    add_common(validate);
    validate->add_option("--t", f.t, "time");
    validate->add_option("--n-max", f.n_max, "largest compared state (default: auto)");
    validate->add_option("--n-samples", f.n_samples, "number of draws (default 100000)");
    validate->add_option("--seed", f.seed, "RNG seed (required)");
    validate->add_option("--z-threshold", f.z_threshold, "per-bin z gate (default 4)");
    validate->add_option("--p-floor", f.p_floor, "chi-square p-value gate (default 0.001)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const ojson config = f.config_path.empty() ? ojson::object() : load_config(f.config_path);
        CLI::App* cmd = app.get_subcommands().front();
        const std::string name = cmd->get_name();

        Resolver r(name, config);
        resolve_process_params(r, f, config);
        const std::optional<double> beta_default{1.0};
        const std::optional<std::string> csv{"csv"};

        if (name == "pmf") {
            r.put<double>("beta", f.beta, beta_default, true);
            r.put<double>("t", f.t, std::nullopt, true);
            r.put<long>("n_max", f.n_max, std::optional<long>(20), true);
            const double beta_resolved =
                f.beta ? *f.beta : (config.contains("beta") ? config.at("beta").get<double>() : 1.0);
            const std::optional<std::string> default_method{
                beta_resolved == 1.0 ? "recurrence" : "convolution"};
            r.put_string("method", f.method, default_method, true);
            r.put_string("format", f.format, csv, true);
            auto rc = std::move(r).take();
            return cmd_pmf(rc, f.output);
        }
        if (name == "moments") {
            r.put<double>("beta", f.beta, beta_default, true);
            r.put<double>("t", f.t, std::nullopt, true);
            r.put_string("format", f.format, csv, true);
            auto rc = std::move(r).take();
            return cmd_moments(rc, f.output);
        }
        if (name == "lrd") {
            r.put<double>("beta", f.beta, std::nullopt, true);
            r.put<double>("s", f.s, std::nullopt, true);
            r.put_string("t_grid", f.t_grid, std::nullopt, true);
            r.put_string("format", f.format, csv, true);
            auto rc = std::move(r).take();
            return cmd_lrd(rc, f.output);
        }
        if (name == "sample") {
            r.put<double>("beta", f.beta, beta_default, true);
            if (!f.times.empty() || config.contains("times")) {
                r.put_string("times", f.times, std::nullopt, true);
            } else {
                r.put<double>("t", f.t, std::nullopt, true);
            }
            r.put<long>("n_samples", f.n_samples, std::optional<long>(1), true);
            r.put<std::uint64_t>("seed", f.seed, std::nullopt, true);  // mandatory
            r.put_string("format", f.format, csv, true);
            auto rc = std::move(r).take();
            return cmd_sample(rc, f.output);
        }
        if (name == "validate") {
            r.put<double>("beta", f.beta, beta_default, true);
            r.put<double>("t", f.t, std::nullopt, true);
            if (f.n_max.has_value() || config.contains("n_max"))
                r.put<long>("n_max", f.n_max, std::nullopt, true);
            else
                r.put_placeholder("n_max");  // filled after auto-selection
            r.put<long>("n_samples", f.n_samples, std::optional<long>(100000), true);
            r.put<std::uint64_t>("seed", f.seed, std::nullopt, true);  // mandatory
            r.put<double>("z_threshold", f.z_threshold, std::optional<double>(4.0), true);
            r.put<double>("p_floor", f.p_floor, std::optional<double>(0.001), true);
            r.put_string("format", f.format, csv, true);
            auto rc = std::move(r).take();
            return cmd_validate(rc, f.output);
        }
        throw cfpp::domain_error("unknown command");
    } catch (const cfpp::convergence_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const cfpp::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
