// Command-line front end: enumerate, exact-moments, count, partition, sample,
// predict, experiment, verify.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptree/ptree.hpp"

using json = nlohmann::ordered_json;
using ptree::Weights;

namespace {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- options --

struct WeightOpts {
    double alpha = 0, beta = 0, gamma = 0;
    std::vector<std::string> weights;

    bool exact() const { return !weights.empty(); }
};

struct Common {
    std::string output;
    unsigned threads = 0;
    std::vector<std::string> argv;
};

unsigned default_threads() {
    if (const char* env = std::getenv("PTREE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (...) {
        }
        throw ValidationError(std::string("PTREE_THREADS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    const auto dot = s.find('.');
    bool ok = true;
    if (dot == std::string::npos) {
        ok = q.set_str(s, 10) == 0;
    } else {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t scale = s.size() - dot - 1;
        ok = !digits.empty() && digits.find_first_not_of("+-0123456789") == std::string::npos &&
             q.set_str(digits + "/1" + std::string(scale, '0'), 10) == 0;
    }
    if (!ok) throw ValidationError("weights: cannot read '" + s + "' as a rational (use e.g. 1/2 or 0.25)");
    q.canonicalize();
    if (q <= 0) throw ValidationError("weights: every weight must be positive, got '" + s + "'");
    return q;
}

Weights<mpq_class> exact_weights(const WeightOpts& w) {
    return {parse_rational(w.weights[0]), parse_rational(w.weights[1]), parse_rational(w.weights[2])};
}

ptree::ThermoParams thermo(const WeightOpts& w) {
    if (!w.exact()) return {w.alpha, w.beta, w.gamma};
    const auto e = exact_weights(w);
    return {0.0 - std::log(e.a.get_d()), 0.0 - std::log(e.b.get_d()), 0.0 - std::log(e.c.get_d())};
}

void add_weight_options(CLI::App* sub, WeightOpts& w) {
    auto* a = sub->add_option("--alpha", w.alpha, "leaf energy (weight e^-alpha)");
    auto* b = sub->add_option("--beta", w.beta, "internal-node energy (weight e^-beta)");
    auto* g = sub->add_option("--gamma", w.gamma, "root-degree energy (weight e^-gamma)");
    auto* ws = sub->add_option("--weights", w.weights, "rational weights a b c (exact arithmetic)")->expected(3);
    ws->excludes(a)->excludes(b)->excludes(g);
}

// ---------------------------------------------------------------- output --

std::string timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::stoll(sde));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json metadata(const Common& c, const json& config, std::optional<std::uint64_t> seed) {
    json m;
    m["tool"] = "ptree";
    m["version"] = ptree::version;
    m["command"] = c.argv;
    m["config"] = config;
    m["seed"] = seed ? json(*seed) : json(nullptr);
    m["timestamp"] = timestamp();
    return m;
}

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ValidationError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

    void csv_header(const json& meta) {
        out() << "# ptree " << ptree::version << "\n";
        out() << "# config: " << meta["config"].dump() << "\n";
        out() << "# command: " << meta["command"].dump() << "\n";
        out() << "# seed: " << (meta["seed"].is_null() ? std::string("none") : meta["seed"].dump()) << "\n";
        out() << "# timestamp: " << meta["timestamp"].get<std::string>() << "\n";
    }

private:
    std::ofstream file_;
};

std::string num(double x) {
    if (std::isnan(x)) return "NA";
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

// Decimal scientific notation for exp(ln_x), without overflow.
std::string from_log(double ln_x) {
    if (std::isinf(ln_x) && ln_x < 0) return "0";
    const double l10 = ln_x / std::log(10.0);
    double e = std::floor(l10);
    double mant = std::pow(10.0, l10 - e);
    if (mant >= 10.0) {
        mant /= 10.0;
        e += 1;
    }
    std::ostringstream s;
    s << std::setprecision(15) << mant << "e" << (e >= 0 ? "+" : "") << static_cast<long long>(e);
    return s.str();
}

std::vector<ptree::Property> parse_props(const std::vector<std::string>& ids) {
    std::vector<ptree::Property> out;
    for (const auto& id : ids) out.push_back(ptree::Property::parse(id));
    return out;
}

json weights_json(const WeightOpts& w) {
    json j;
    if (w.exact()) j["weights"] = w.weights;
    else j = {{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}};
    return j;
}

// ------------------------------------------------------------ subcommands --

struct EnumerateCmd {
    unsigned n = 0;
    unsigned guard = ptree::default_enumeration_guard;
    std::vector<std::string> props;
    std::optional<unsigned> root_max;
    WeightOpts w;

    void run(const Common& c) const {
        ptree::check_guard(n, guard);
        const auto properties = parse_props(props);
        json cfg = {{"subcommand", "enumerate"}, {"n", n}, {"props", props}, {"guard", guard}};
        cfg.update(weights_json(w));
        if (root_max) cfg["root_max"] = *root_max;
        Sink sink(c.output);
        sink.csv_header(metadata(c, cfg, std::nullopt));
        auto& os = sink.out();
        os << "index,parens,edges,leaves,internal,root_degree,weight,probability";
        for (const auto& p : properties) os << "," << p.id();
        os << "\n";
        if (w.exact()) emit<mpq_class>(os, exact_weights(w), properties);
        else emit<double>(os, Weights<double>::from(thermo(w)), properties);
    }

    template <class Scalar>
    void emit(std::ostream& os, const Weights<Scalar>& wt, const std::vector<ptree::Property>& properties) const {
        ptree::EnumerationOptions eo;
        eo.guard = guard;
        eo.root_max = root_max;
        const Scalar z = ptree::exact_partition<Scalar>(n, wt, eo);
        const ptree::WeightTable<Scalar> table(wt, n);
        ptree::TreeProfile prof;
        std::size_t index = 0;
        ptree::for_each_tree(n, [&](const ptree::PlaneTree& t) {
            prof.compute(t);
            const auto& s = prof.stats();
            if (root_max && s.root_degree > *root_max) return;
            const Scalar weight = table(s);
            os << index++ << "," << ptree::to_parens(t) << "," << s.edges << "," << s.leaves << "," << s.internal
               << "," << s.root_degree << "," << show(weight) << "," << show(Scalar(weight / z));
            for (const auto& p : properties) os << "," << show(p.evaluate<Scalar>(prof));
            os << "\n";
        });
    }

    static std::string show(double x) { return num(x); }
    static std::string show(const mpq_class& x) { return x.get_str(); }
};

struct ExactMomentsCmd {
    std::vector<unsigned> ns;
    unsigned k = 1;
    unsigned guard = ptree::default_enumeration_guard;
    std::vector<std::string> props{"pl"};
    std::optional<unsigned> root_max;
    WeightOpts w;

    void run(const Common& c) const {
        for (unsigned n : ns) ptree::check_guard(n, guard);
        const auto properties = parse_props(props);
        json cfg = {{"subcommand", "exact-moments"}, {"n", ns}, {"k", k}, {"props", props}, {"guard", guard}};
        cfg.update(weights_json(w));
        if (root_max) cfg["root_max"] = *root_max;
        Sink sink(c.output);
        sink.csv_header(metadata(c, cfg, std::nullopt));
        auto& os = sink.out();
        os << "n,k,property,alpha,beta,gamma,value\n";
        const auto p = thermo(w);
        ptree::EnumerationOptions eo;
        eo.guard = guard;
        eo.root_max = root_max;
        for (unsigned n : ns)
            for (const auto& prop : properties) {
                std::vector<std::string> vals;
                if (w.exact()) {
                    for (const auto& m : ptree::exact_moments<mpq_class>(n, exact_weights(w), prop, k, eo))
                        vals.push_back(m.get_str());
                } else {
                    for (double m : ptree::exact_moments<double>(n, Weights<double>::from(p), prop, k, eo))
                        vals.push_back(num(m));
                }
                for (unsigned j = 0; j <= k; ++j)
                    os << n << "," << j << "," << prop.id() << "," << num(p.alpha) << "," << num(p.beta) << ","
                       << num(p.gamma) << "," << vals[j] << "\n";
            }
    }
};

struct CountCmd {
    unsigned n = 0;
    std::string by = "leaves";
    unsigned guard = ptree::default_enumeration_guard;

    void run(const Common& c) const {
        const json cfg = {{"subcommand", "count"}, {"n", n}, {"by", by}, {"guard", guard}};
        const bool enumerate = n <= guard;
        std::map<std::array<long, 3>, long> hist;  // (m, k, r)
        if (enumerate) {
            ptree::TreeProfile prof;
            ptree::for_each_tree(n, [&](const ptree::PlaneTree& t) {
                prof.compute(t);
                const auto& s = prof.stats();
                ++hist[{static_cast<long>(s.internal), static_cast<long>(s.leaves), static_cast<long>(s.root_degree)}];
            });
        }
        auto enumerated = [&](auto pred) {
            long total = 0;
            for (const auto& [key, cnt] : hist)
                if (pred(key[0], key[1], key[2])) total += cnt;
            return total;
        };
        Sink sink(c.output);
        sink.csv_header(metadata(c, cfg, std::nullopt));
        auto& os = sink.out();
        const long N = n;
        auto row_tail = [&](const ptree::BigCount& f, long e) {
            if (enumerate) os << "," << e << "," << f.get_str() << "," << (f == e ? "true" : "false") << "\n";
            else os << ",," << f.get_str() << ",n/a\n";
        };
        if (by == "leaves" || by == "root" || by == "internal") {
            const char* col = by == "leaves" ? "k" : by == "root" ? "r" : "m";
            os << "n," << col << ",enumerated,formula,match\n";
            for (long x = 0; x <= N; ++x) {
                ptree::BigCount f;
                long e;
                if (by == "leaves") {
                    f = ptree::count_by_leaves(N, x);
                    e = enumerated([x](long, long k, long) { return k == x; });
                } else if (by == "root") {
                    f = ptree::count_by_root(N, x);
                    e = enumerated([x](long, long, long r) { return r == x; });
                } else {
                    f = ptree::count_by_internal(N, x);
                    e = enumerated([x](long m, long, long) { return m == x; });
                }
                if (f == 0 && e == 0) continue;
                os << N << "," << x;
                row_tail(f, e);
            }
        } else if (by == "mk" || by == "kr") {
            os << (by == "mk" ? "n,m,k" : "n,k,r") << ",enumerated,formula,match\n";
            for (long x = 0; x <= N; ++x)
                for (long y = 0; y <= N; ++y) {
                    ptree::BigCount f;
                    long e;
                    if (by == "mk") {
                        f = ptree::count_mk(N, x, y);
                        e = enumerated([x, y](long m, long k, long) { return m == x && k == y; });
                    } else {
                        f = ptree::count_kr(N, x, y);
                        e = enumerated([x, y](long, long k, long r) { return k == x && r == y; });
                    }
                    if (f == 0 && e == 0) continue;
                    os << N << "," << x << "," << y;
                    row_tail(f, e);
                }
        } else if (by == "full") {
            os << "n,m,k,r,regime,enumerated,formula,match\n";
            for (long m = 0; m <= N; ++m)
                for (long k = 0; k <= N; ++k)
                    for (long r = 0; r <= N; ++r) {
                        const ptree::BigCount f = ptree::count_full(N, m, k, r);
                        const long e = enumerated([&](long a, long b, long d) { return a == m && b == k && d == r; });
                        if (f == 0 && e == 0) continue;
                        const auto reg = ptree::full_regime(N, m, k, r);
                        os << N << "," << m << "," << k << "," << r << ","
                           << (N == 0 ? "trivial"
                               : reg == ptree::FullRegime::branching ? "branching"
                               : reg == ptree::FullRegime::paths_only ? "paths-only"
                                                                       : "empty");
                        row_tail(f, e);
                    }
        } else {
            throw ValidationError("count: --by must be one of leaves|root|internal|full|mk|kr");
        }
    }
};

struct PartitionCmd {
    std::vector<unsigned> ns;
    WeightOpts w;

    void run(const Common& c) const {
        json cfg = {{"subcommand", "partition"}, {"n", ns}};
        cfg.update(weights_json(w));
        Sink sink(c.output);
        sink.csv_header(metadata(c, cfg, std::nullopt));
        auto& os = sink.out();
        os << "n,alpha,beta,gamma,exact,asymptotic,ratio\n";
        const auto p = thermo(w);
        const unsigned top = *std::max_element(ns.begin(), ns.end());
        std::optional<ptree::SeriesTables<mpq_class>> exact;
        if (w.exact()) exact = ptree::build_tables<mpq_class>(exact_weights(w), top);
        const auto t = ptree::build_tables<double>(w.exact() ? Weights<double>{exact->weights.a.get_d(),
                                                                               exact->weights.b.get_d(),
                                                                               exact->weights.c.get_d()}
                                                             : Weights<double>::from(p),
                                                   top);
        const bool has_asym = p.gamma == 0.0;
        for (unsigned n : ns) {
            os << n << "," << num(p.alpha) << "," << num(p.beta) << "," << num(p.gamma) << ",";
            const double ln_exact = p.gamma == 0.0 ? t.log_g(n) : t.log_z(n);
            if (exact) os << exact->z_true(n).get_str();
            else os << from_log(ln_exact);
            if (has_asym && n > 0) {
                const double ln_asym = ptree::log_partition_asymptotic(n, p.alpha, p.beta);
                os << "," << from_log(ln_asym) << "," << num(std::exp(ln_exact - ln_asym)) << "\n";
            } else {
                os << ",NA,NA\n";
            }
        }
    }
};

struct SampleCmd {
    unsigned n = 0;
    std::size_t count = 1;
    std::uint64_t seed = 1;
    std::vector<std::string> props;
    std::optional<unsigned> root_max;
    std::string format = "csv";
    bool trees = false;
    WeightOpts w;

    void run(const Common& c) const {
        if (format != "csv" && format != "jsonl") throw ValidationError("sample: --format must be csv or jsonl");
        const auto properties = parse_props(props);
        json cfg = {{"subcommand", "sample"}, {"n", n}, {"count", count}, {"props", props}, {"format", format},
                    {"trees", trees}, {"threads", c.threads}};
        cfg.update(weights_json(w));
        if (root_max) cfg["root_max"] = *root_max;
        cfg["rng"] = ptree::Rng::algorithm;
        const Weights<double> wt = w.exact()
                                       ? Weights<double>{exact_weights(w).a.get_d(), exact_weights(w).b.get_d(),
                                                         exact_weights(w).c.get_d()}
                                       : Weights<double>::from(thermo(w));
        const ptree::GibbsSampler sampler(n, wt, root_max);
        ptree::BatchOptions bo;
        bo.count = count;
        bo.seed = seed;
        bo.properties = properties;
        bo.keep_trees = trees;
        bo.threads = c.threads;
        const auto batch = ptree::sample_batch(sampler, bo);

        Sink sink(c.output);
        auto& os = sink.out();
        const json meta = metadata(c, cfg, seed);
        if (format == "csv") {
            sink.csv_header(meta);
            os << "index,edges,leaves,internal,root_degree";
            if (trees) os << ",parens";
            for (const auto& id : batch.property_ids) os << "," << id;
            os << "\n";
            for (std::size_t i = 0; i < batch.records.size(); ++i) {
                const auto& r = batch.records[i];
                os << i << "," << r.stats.edges << "," << r.stats.leaves << "," << r.stats.internal << ","
                   << r.stats.root_degree;
                if (trees) os << "," << r.parens;
                for (double v : r.values) os << "," << num(v);
                os << "\n";
            }
        } else {
            os << json{{"metadata", meta}}.dump() << "\n";
            for (std::size_t i = 0; i < batch.records.size(); ++i) {
                const auto& r = batch.records[i];
                json j = {{"index", i},
                          {"edges", r.stats.edges},
                          {"leaves", r.stats.leaves},
                          {"internal", r.stats.internal},
                          {"root_degree", r.stats.root_degree}};
                if (trees) j["parens"] = r.parens;
                for (std::size_t p = 0; p < r.values.size(); ++p) j[batch.property_ids[p]] = r.values[p];
                os << j.dump() << "\n";
            }
        }
    }
};

struct PredictCmd {
    std::string toll;
    double alpha = 0, beta = 0;

    int run(const Common& c) const {
        const auto f = ptree::parse_toll(toll);
        const auto a = ptree::analyze_toll(f);
        const json cfg = {{"subcommand", "predict"}, {"toll", toll}, {"alpha", alpha}, {"beta", beta}};
        json out;
        out["metadata"] = metadata(c, cfg, std::nullopt);
        out["toll"] = f.to_string();
        out["delta"] = a.delta;
        out["deltas"] = {{"n", a.delta_n}, {"d0", a.delta_d0}, {"d1", a.delta_d1}};
        out["uniform"] = a.uniform;
        out["subtree_positive"] = a.subtree_positive;
        out["vprime"] = a.v_prime();
        int code = 0;
        if (a.uniform) {
            const auto p = ptree::predict_limit(f, alpha, beta);
            out["q"] = p.q;
            out["limit_law"] = ptree::to_string(p.law);
        } else {
            out["q"] = nullptr;
            out["error"] = "hypothesis violated: maximal monomials differ in their (n, d0, d1) group degrees";
            code = 1;
        }
        Sink sink(c.output);
        sink.out() << out.dump(2) << "\n";
        return code;
    }
};

struct ExperimentCmd {
    std::string config_path;
    std::string format = "json";
    std::string summary;

    int run(const Common& c) const {
        if (format != "csv" && format != "json") throw ValidationError("experiment: --format must be csv or json");
        std::ifstream in(config_path);
        if (!in) throw ValidationError("experiment: cannot read config '" + config_path + "'");
        json cfg;
        try {
            cfg = json::parse(in);
        } catch (const json::exception& e) {
            throw ValidationError(std::string("experiment: malformed config: ") + e.what());
        }
        auto get = [&](const char* key, auto def) {
            using T = decltype(def);
            if (!cfg.contains(key)) return def;
            try {
                return cfg.at(key).get<T>();
            } catch (const json::exception&) {
                throw ValidationError(std::string("experiment: bad value for '") + key + "'");
            }
        };
        const std::string kind = get("kind", std::string());
        const auto grid = get("n_grid", std::vector<unsigned>{});
        const auto count = get("count", std::size_t{10000});
        const auto seed = get("seed", std::uint64_t{1});
        const double tolerance = get("tolerance", 0.05);
        const ptree::ThermoParams p{get("alpha", 0.0), get("beta", 0.0), get("gamma", 0.0)};
        const ptree::Property prop = ptree::Property::parse(get("property", std::string("pl")));
        ptree::EstimateOptions eo;
        eo.exact_limit = get("exact_limit", 12u);
        eo.threads = c.threads;
        if (grid.empty()) throw ValidationError("experiment: n_grid must be a non-empty list");

        ptree::RatioReport rep;
        if (kind == "ratio") {
            const auto den = ptree::Property::parse(get("denominator", std::string()));
            rep = ptree::ratio_experiment(prop, den, p, grid, count, seed, get("predicted", 1.0), eo);
        } else if (kind == "scaling") {
            rep = ptree::scaling_experiment(prop, p.alpha, p.beta, grid, count, seed, eo);
        } else if (kind == "bounded_root") {
            rep = ptree::bounded_root_experiment(prop, p, get("h", 1u), grid, count, seed, eo);
        } else {
            throw ValidationError("experiment: kind must be ratio, scaling or bounded_root");
        }

        const auto& last = rep.rows.back();
        const double rel = last.abs_error / std::abs(rep.predicted);
        const bool pass = rel <= tolerance;
        json rows = json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"n", r.n},
                            {"numerator", r.numerator.value},
                            {"numerator_se", r.numerator.std_error},
                            {"denominator", r.denominator.value},
                            {"denominator_se", r.denominator.std_error},
                            {"method", ptree::to_string(r.numerator.method)},
                            {"observed", r.observed},
                            {"std_error", r.std_error},
                            {"predicted", r.predicted},
                            {"abs_error", r.abs_error}});
        json meta = metadata(c, cfg, seed);
        json sum = {{"metadata", meta},
                    {"numerator", rep.numerator_label},
                    {"denominator", rep.denominator_label},
                    {"predicted", rep.predicted},
                    {"rows", rows},
                    {"monotone", rep.monotone},
                    {"relative_error_at_largest_n", rel},
                    {"tolerance", tolerance},
                    {"passed", pass},
                    {"note", rep.note}};
        if (!summary.empty()) {
            std::ofstream s(summary);
            if (!s) throw ValidationError("experiment: cannot open summary file '" + summary + "'");
            s << sum.dump(2) << "\n";
        }
        Sink sink(c.output);
        auto& os = sink.out();
        if (format == "json") {
            os << sum.dump(2) << "\n";
        } else {
            sink.csv_header(meta);
            os << "n,numerator,numerator_se,denominator,denominator_se,method,observed,std_error,predicted,"
                  "abs_error\n";
            for (const auto& r : rep.rows)
                os << r.n << "," << num(r.numerator.value) << "," << num(r.numerator.std_error) << ","
                   << num(r.denominator.value) << "," << num(r.denominator.std_error) << ","
                   << ptree::to_string(r.numerator.method) << "," << num(r.observed) << "," << num(r.std_error)
                   << "," << num(r.predicted) << "," << num(r.abs_error) << "\n";
        }
        return pass ? 0 : 1;
    }
};

struct VerifyCmd {
    std::string suite = "quick";
    std::uint64_t seed = ptree::VerifyOptions{}.seed;

    int run(const Common& c) const {
        ptree::VerifyOptions vo;
        if (suite == "quick") vo.suite = ptree::Suite::quick;
        else if (suite == "full") vo.suite = ptree::Suite::full;
        else throw ValidationError("verify: --suite must be quick or full");
        vo.threads = c.threads;
        vo.seed = seed;
        const auto rep = ptree::run_verification(vo, [](const ptree::CriterionResult& r) {
            std::cerr << "[" << (r.passed ? "PASS" : "FAIL") << "] " << r.id << " " << r.name << "\n";
        });
        json crit = json::array();
        for (const auto& r : rep.criteria)
            crit.push_back({{"id", r.id},
                            {"name", r.name},
                            {"passed", r.passed},
                            {"detail", r.detail},
                            {"seconds", r.seconds},
                            {"budget_seconds", r.budget_seconds}});
        const json out = {{"suite", ptree::to_string(rep.suite)},
                          {"version", ptree::version},
                          {"seed", seed},
                          {"criteria", crit},
                          {"all_passed", rep.all_passed()}};
        Sink sink(c.output);
        sink.out() << out.dump(2) << "\n";
        return rep.all_passed() ? 0 : 1;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Plane trees under Gibbs weights: enumeration, counting, series, sampling, asymptotics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ptree::version);

    Common common;
    common.argv.assign(argv, argv + argc);
    std::optional<unsigned> threads_flag;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-o,--output", common.output, "write results to this file instead of stdout");
        sub->add_option("--threads", threads_flag, "worker threads (default: PTREE_THREADS or 1)")
            ->check(CLI::PositiveNumber);
    };

    EnumerateCmd en;
    auto* s_en = app.add_subcommand("enumerate", "list every tree on n edges with Gibbs weights");
    s_en->add_option("--n", en.n, "edges")->required();
    s_en->add_option("--props", en.props, "property ids (e v d0 d1 r pl wi lr ir or a toll)")->delimiter(',');
    s_en->add_option("--guard", en.guard, "largest n allowed for enumeration");
    s_en->add_option("--root-max", en.root_max, "only trees with root degree <= h")->check(CLI::PositiveNumber);
    add_weight_options(s_en, en.w);
    add_common(s_en);

    ExactMomentsCmd em;
    auto* s_em = app.add_subcommand("exact-moments", "E[P^j], j = 0..k, by exhaustive enumeration");
    s_em->add_option("--n", em.ns, "edges (repeatable)")->required()->delimiter(',');
    s_em->add_option("--k", em.k, "highest moment");
    s_em->add_option("--props", em.props, "property ids")->delimiter(',');
    s_em->add_option("--guard", em.guard, "largest n allowed for enumeration");
    s_em->add_option("--root-max", em.root_max, "only trees with root degree <= h")->check(CLI::PositiveNumber);
    add_weight_options(s_em, em.w);
    add_common(s_em);

    CountCmd co;
    auto* s_co = app.add_subcommand("count", "closed-form counts against the enumeration histogram");
    s_co->add_option("--n", co.n, "edges")->required();
    s_co->add_option("--by", co.by, "leaves|root|internal|full|mk|kr")
        ->check(CLI::IsMember({"leaves", "root", "internal", "full", "mk", "kr"}));
    s_co->add_option("--guard", co.guard, "largest n for which the histogram is enumerated");
    add_common(s_co);

    PartitionCmd pa;
    auto* s_pa = app.add_subcommand("partition", "exact and asymptotic partition functions");
    s_pa->add_option("--n", pa.ns, "edges (repeatable)")->required()->delimiter(',');
    add_weight_options(s_pa, pa.w);
    add_common(s_pa);

    SampleCmd sa;
    auto* s_sa = app.add_subcommand("sample", "exact Gibbs samples");
    s_sa->add_option("--n", sa.n, "edges")->required();
    s_sa->add_option("--count", sa.count, "number of trees")->check(CLI::PositiveNumber);
    s_sa->add_option("--seed", sa.seed, "random seed");
    s_sa->add_option("--props", sa.props, "property ids")->delimiter(',');
    s_sa->add_option("--root-max", sa.root_max, "condition on root degree <= h")->check(CLI::PositiveNumber);
    s_sa->add_option("--format", sa.format, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    s_sa->add_flag("--trees", sa.trees, "include each tree as a parenthesis word");
    add_weight_options(s_sa, sa.w);
    add_common(s_sa);

    PredictCmd pr;
    auto* s_pr = app.add_subcommand("predict", "degree analysis and scaling constant of a polynomial toll");
    s_pr->add_option("--toll", pr.toll, "toll polynomial in t l0 l1 n L0 L1, e.g. \"(t+1)(n-t)\"")->required();
    s_pr->add_option("--alpha", pr.alpha, "leaf energy");
    s_pr->add_option("--beta", pr.beta, "internal-node energy");
    add_common(s_pr);

    ExperimentCmd ex;
    auto* s_ex = app.add_subcommand("experiment", "run a ratio/scaling/bounded-root experiment from a JSON config");
    s_ex->add_option("--config", ex.config_path, "experiment config (JSON)")->required();
    s_ex->add_option("--format", ex.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    s_ex->add_option("--summary", ex.summary, "also write the JSON summary to this file");
    add_common(s_ex);

    VerifyCmd ve;
    auto* s_ve = app.add_subcommand("verify", "run the acceptance battery");
    s_ve->add_option("--suite", ve.suite, "quick|full")->check(CLI::IsMember({"quick", "full"}));
    s_ve->add_option("--seed", ve.seed, "base seed");
    add_common(s_ve);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        common.threads = threads_flag ? *threads_flag : default_threads();
        if (s_en->parsed()) en.run(common);
        else if (s_em->parsed()) em.run(common);
        else if (s_co->parsed()) co.run(common);
        else if (s_pa->parsed()) pa.run(common);
        else if (s_sa->parsed()) sa.run(common);
        else if (s_pr->parsed()) return pr.run(common);
        else if (s_ex->parsed()) return ex.run(common);
        else if (s_ve->parsed()) return ve.run(common);
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ptree::TollParseError& e) {
        std::cerr << "error: malformed toll: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
