#pragma once
// Job parsing, the module cache and report assembly behind the `hamlie` command.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>

#include <json.hpp>

#include "hamlie/verify.hpp"

namespace hamlie {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kCacheFormat = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JobSpec {
    fp_t p = 0;
    std::string command;
    std::optional<Weight> weight;
    std::string format = "json";
    std::optional<std::string> cache_dir;
    std::uint64_t seed = 1;
    bool timings = false;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = {"classify", "induce", "factors", "restrict", "balanced", "verify"};
    return c;
}

// "a,b" with signed or canonical entries, reduced mod p.
inline Weight parse_weight(const std::string& s, fp_t p) {
    static const std::regex re(R"(\s*\(?\s*(-?\d{1,9})\s*,\s*(-?\d{1,9})\s*\)?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("malformed weight '" + s + "' (expected a,b)");
    return make_weight(std::stoll(m[1]), std::stoll(m[2]), p);
}

inline void validate(const JobSpec& job) {
    if (std::find(commands().begin(), commands().end(), job.command) == commands().end())
        throw UsageError("unknown command '" + job.command + "'");
    if (job.p < 5 || job.p > 97 || !is_prime(job.p)) throw UsageError("p must be a prime in [5, 97]");
    if (job.format != "json" && job.format != "markdown") throw UsageError("format must be json or markdown");
    bool needs = job.command == "induce" || job.command == "factors" || job.command == "restrict";
    if (needs && !job.weight) throw UsageError(job.command + " needs --weight");
    if (!needs && job.weight) throw UsageError(job.command + " does not take --weight");
}

// --- module cache ---------------------------------------------------------------------------

inline void dump_module(std::ostream& os, const MatrixModule& m) {
    os << "hamlie-module " << kCacheFormat << " " << kVersion << "\n";
    os << "p " << m.p() << "\n";
    os << "label " << m.label << "\n";
    os << "dim " << m.dim() << "\n";
    os << "weights";
    for (auto w : m.basis_weights) os << " " << w.x << " " << w.y;
    os << "\n";
    for (std::size_t g = 0; g < m.alg->dim(); ++g) {
        FpMatrix d = m.dense(g);
        std::vector<std::tuple<std::size_t, std::size_t, fp_t>> nz;
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j)
                if (d(i, j)) nz.emplace_back(i, j, d(i, j));
        os << "gen " << g << " " << nz.size();
        for (auto [i, j, v] : nz) os << " " << i << " " << j << " " << v;
        os << "\n";
    }
    os << "end\n";
}

enum class CacheStatus { hit, miss, corrupt };

// Reads a dump for the p-envelope at p. A different format, version or p is a miss;
// anything unreadable is reported as corrupt.
inline std::pair<CacheStatus, std::optional<MatrixModule>> load_module(std::istream& is, fp_t p) {
    using R = std::pair<CacheStatus, std::optional<MatrixModule>>;
    std::string tag, version, key;
    int format = 0;
    if (!(is >> tag >> format >> version) || tag != "hamlie-module") return R{CacheStatus::corrupt, {}};
    if (format != kCacheFormat || version != kVersion) return R{CacheStatus::miss, {}};
    fp_t fp = 0;
    if (!(is >> key >> fp) || key != "p") return R{CacheStatus::corrupt, {}};
    if (fp != p) return R{CacheStatus::miss, {}};
    std::string label;
    if (!(is >> key) || key != "label" || !(is >> std::ws) || !std::getline(is, label)) return R{CacheStatus::corrupt, {}};
    std::size_t dim = 0;
    if (!(is >> key >> dim) || key != "dim" || dim > 1000000) return R{CacheStatus::corrupt, {}};
    if (!(is >> key) || key != "weights") return R{CacheStatus::corrupt, {}};
    std::vector<Weight> weights(dim);
    for (auto& w : weights)
        if (!(is >> w.x >> w.y) || w.x >= p || w.y >= p) return R{CacheStatus::corrupt, {}};
    AlgebraPtr alg = build_p_envelope(p);
    std::vector<std::vector<SparseCoords>> cols(alg->dim(), std::vector<SparseCoords>(dim));
    for (std::size_t g = 0; g < alg->dim(); ++g) {
        std::size_t gi = 0, nnz = 0;
        if (!(is >> key >> gi >> nnz) || key != "gen" || gi != g) return R{CacheStatus::corrupt, {}};
        for (std::size_t t = 0; t < nnz; ++t) {
            std::size_t i = 0, j = 0;
            fp_t v = 0;
            if (!(is >> i >> j >> v) || i >= dim || j >= dim || v == 0 || v >= p) return R{CacheStatus::corrupt, {}};
            cols[g][j].emplace_back(static_cast<std::uint32_t>(i), v);
        }
    }
    if (!(is >> key) || key != "end") return R{CacheStatus::corrupt, {}};
    try {
        return R{CacheStatus::hit, MatrixModule::from_columns(alg, label, std::move(weights),
                                                              [&](std::size_t g, std::size_t k) { return cols[g][k]; })};
    } catch (const std::exception&) {
        return R{CacheStatus::corrupt, {}};
    }
}

inline std::optional<std::string> cache_dir_for(const JobSpec& job) {
    if (job.cache_dir) return job.cache_dir;
    if (const char* env = std::getenv("HAMLIE_CACHE_DIR"); env && *env) return std::string(env);
    return std::nullopt;
}

// Z(lambda), read from the cache when a valid dump exists and written back otherwise.
inline InducedModule induced_cached(fp_t p, Weight l, const std::optional<std::string>& dir, std::ostream& warn = std::cerr) {
    if (!dir) return build_induced(p, l);
    namespace fs = std::filesystem;
    fs::path path = fs::path(*dir) / ("Z_p" + std::to_string(p) + "_" + std::to_string(l.x) + "_" + std::to_string(l.y) + ".txt");
    if (fs::exists(path)) {
        std::ifstream in(path);
        auto [status, m] = load_module(in, p);
        if (status == CacheStatus::hit) {
            InducedModule z;
            z.p = p;
            z.lambda = l;
            z.m0 = GL2Module::simple(p, l);
            if (m->dim() == z.dim()) {
                z.module = std::make_shared<MatrixModule>(std::move(*m));
                return z;
            }
            status = CacheStatus::corrupt;
        }
        if (status == CacheStatus::corrupt) warn << "warning: corrupt cache file " << path.string() << ", rebuilding\n";
    }
    InducedModule z = build_induced(p, l);
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        dump_module(out, *z.module);
        if (!out) {
            warn << "warning: could not write cache file " << path.string() << "\n";
            return z;
        }
    }
    fs::rename(tmp, path, ec);
    return z;
}

// --- reports --------------------------------------------------------------------------------

using Json = nlohmann::ordered_json;

struct Report {
    Json doc;
    int exit_code = 0;
};

inline Json weight_json(Weight w, fp_t p) {
    PrimeField f(p);
    return Json::array({f.centered(w.x), f.centered(w.y)});
}

inline Json check_json(const std::string& name, bool pass, const std::string& detail) {
    Json c;
    c["name"] = name;
    c["pass"] = pass;
    c["detail"] = detail;
    return c;
}

inline std::string dims_string(const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

// The class of L(lambda): lambda itself, or its alias representative.
inline Weight class_rep(Weight l, fp_t p) {
    return is_catalog_rep(l, p) ? l : Weight{l.x, PrimeField(p).add(l.y, 1)};
}

inline Report run(const JobSpec& job, std::ostream& warn = std::cerr) {
    validate(job);
    const fp_t p = job.p;
    auto t0 = detail::Clock::now();
    Report r;
    Json& d = r.doc;
    d["prime"] = p;
    d["command"] = job.command;
    if (job.weight) d["weight"] = weight_json(*job.weight, p);
    Json checks = Json::array();
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back(check_json(name, pass, detail));
    };
    auto cache = cache_dir_for(job);

    if (job.command == "classify") {
        auto cat = catalog(p);
        Json arr = Json::array();
        for (const auto& c : cat) {
            Json e;
            e["weight"] = weight_json(c.rep, p);
            e["dim"] = c.dim;
            Json al = Json::array();
            for (auto a : c.aliases) al.push_back(weight_json(a, p));
            e["aliases"] = al;
            e["realization"] = c.realization;
            arr.push_back(e);
        }
        d["catalog"] = arr;
        const std::size_t want = static_cast<std::size_t>(p) * p - p + 1;
        add("class count", cat.size() == want, std::to_string(cat.size()) + " of " + std::to_string(want));
        bool dims = std::all_of(cat.begin(), cat.end(), [&](const SimpleClass& c) { return c.dim == predicted_dim(c.rep, p); });
        add("dimensions", dims, dims ? "all as predicted" : "mismatch");
    } else if (job.command == "induce") {
        InducedModule z = induced_cached(p, *job.weight, cache, warn);
        const MatrixModule& m = *z.module;
        add("dimension", m.dim() == static_cast<std::size_t>(p) * p * z.m0.dim(), std::to_string(m.dim()));
        CheckResult w = check_weights(m), h = check_homomorphism(m), res = check_restricted(m);
        add("weights", w.ok, w.ok ? "ok" : w.detail);
        add("homomorphism", h.ok, h.ok ? "ok" : h.detail);
        add("restricted", res.ok, res.ok ? "ok" : res.detail);
        bool simple = is_simple(m), exc = is_exceptional(z.lambda, p);
        add("simple iff not exceptional", simple != exc,
            std::string(simple ? "simple" : "not simple") + ", " + (exc ? "exceptional" : "not exceptional"));
    } else if (job.command == "factors") {
        InducedModule z = induced_cached(p, *job.weight, cache, warn);
        Json arr = Json::array();
        std::size_t total = 0;
        for (const auto& f : induced_series(z)) {
            Weight rep = catalog_rep_of(sorted_max_weights(*f.module), p);
            Json e;
            e["weight"] = weight_json(f.head ? z.lambda : rep, p);
            e["dim"] = f.dim();
            arr.push_back(e);
            total += f.dim();
        }
        d["series"] = arr;
        add("dimensions add up", total == z.dim(), std::to_string(total) + " = " + std::to_string(z.dim()));
    } else if (job.command == "restrict") {
        Weight rep = class_rep(*job.weight, p);
        GradedResult g = graded_restriction(p, rep);
        SimpleClass c = realize_simple(p, rep);
        FactorMultiset direct = direct_factors(restrict_to_W(*c.module));
        FactorMultiset want = predicted_restriction(p, rep);
        Json w = Json::object();
        for (auto [k, n] : g.factors) w[std::to_string(k)] = n;
        d["witt"] = w;
        add("graded pipeline", g.check.ok, g.check.ok ? std::to_string(g.pieces.size()) + " pieces" : g.check.detail);
        add("graded = direct", g.factors == direct, multiset_string(direct));
        add("matches prediction", g.factors == want, multiset_string(want));
        add("dimension accounting", multiset_dim(g.factors, p) == c.dim, std::to_string(c.dim));
        add("equal multiplicities for 1 <= j <= p-2", equal_middle_multiplicities(g.factors, p), "");
    } else if (job.command == "balanced") {
        AlgebraPtr hh = build_p_envelope(p);
        BalancedReport b = balanced_toral_check(*hh, witt_torus_element(p), 1);
        add("ad-semisimple", b.semisimple, "eigendims " + dims_string(b.eigendims));
        add("balanced", b.balanced && !b.degenerate, "common nonzero eigenspace dim " + std::to_string(b.common));
    } else if (job.command == "verify") {
        VerifyOptions o;
        o.seed = job.seed;
        o.timings = job.timings;
        for (const auto& c : acceptance_checks(o)) add(c.name, c.pass, c.detail);
    }
    d["checks"] = checks;
    d["version"] = kVersion;
    d["seed"] = job.seed;
    if (job.timings) d["timings"] = {{"total_ms", static_cast<long long>(detail::seconds_since(t0) * 1000)}};
    for (const auto& c : checks)
        if (!c["pass"].get<bool>()) r.exit_code = 1;
    return r;
}

// --- rendering ------------------------------------------------------------------------------

inline std::string weight_text(const Json& w) {
    return "(" + std::to_string(w[0].get<long long>()) + "," + std::to_string(w[1].get<long long>()) + ")";
}

inline std::string render(const Report& r, const std::string& format) {
    const Json& d = r.doc;
    if (format == "json") return d.dump(2) + "\n";
    std::ostringstream os;
    os << "# hamlie " << d["command"].get<std::string>() << ", p = " << d["prime"].get<long long>() << "\n\n";
    if (d.contains("weight")) os << "Weight: " << weight_text(d["weight"]) << "\n\n";
    if (d.contains("catalog")) {
        os << "| weight | dim | aliases | realization |\n|---|---|---|---|\n";
        for (const auto& e : d["catalog"]) {
            std::string al;
            for (const auto& a : e["aliases"]) al += (al.empty() ? "" : " ") + weight_text(a);
            os << "| " << weight_text(e["weight"]) << " | " << e["dim"].get<long long>() << " | " << al << " | "
               << e["realization"].get<std::string>() << " |\n";
        }
        os << "\n";
    }
    if (d.contains("series")) {
        os << "| factor | dim |\n|---|---|\n";
        for (const auto& e : d["series"]) os << "| L" << weight_text(e["weight"]) << " | " << e["dim"].get<long long>() << " |\n";
        os << "\n";
    }
    if (d.contains("witt")) {
        os << "| L_W(r) | multiplicity |\n|---|---|\n";
        for (const auto& [k, v] : d["witt"].items()) os << "| " << k << " | " << v.get<long long>() << " |\n";
        os << "\n";
    }
    os << "| check | result | detail |\n|---|---|---|\n";
    for (const auto& c : d["checks"])
        os << "| " << c["name"].get<std::string>() << " | " << (c["pass"].get<bool>() ? "pass" : "FAIL") << " | "
           << c["detail"].get<std::string>() << " |\n";
    if (d.contains("timings")) os << "\nTotal time: " << d["timings"]["total_ms"].get<long long>() << " ms\n";
    return os.str();
}

}  // namespace hamlie
