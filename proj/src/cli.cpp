#include "hhh/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hhh/tracealg.hpp"

namespace hhh {

namespace fs = std::filesystem;

BraidWord parse_braid(const std::string& text, int n) {
    try {
        return parse_braid_word(text, n);
    } catch (const std::invalid_argument& e) {
        throw CliError("parse_error", e.what());
    }
}

void parse_cutoff(const std::string& text, Config& cfg) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string axis = "q", val = item;
        auto eq = item.find('=');
        if (eq != std::string::npos) {
            axis = item.substr(0, eq);
            val = item.substr(eq + 1);
        }
        long long v = 0;
        std::size_t used = 0;
        try {
            v = std::stoll(val, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != val.size()) throw CliError("config_error", "cutoff: not an integer: " + item);
        if (axis == "q") {
            if (v <= 0) throw CliError("config_error", "cutoff: q bound must be positive");
            cfg.qmax = static_cast<int>(v);
        } else if (axis == "a" || axis == "X" || axis == "C") {
            cfg.cut[axis] = v;
        } else {
            throw CliError("config_error", "cutoff: unknown axis " + axis);
        }
    }
}

Normalization parse_normalization(const std::string& text) {
    std::stringstream ss(text);
    std::string item;
    std::vector<int> v;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            v.push_back(std::stoi(item, &used));
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw CliError("config_error", "normalization: not an integer: " + item);
    }
    if (v.size() != 3) throw CliError("config_error", "normalization: expected dX,dh,da");
    return Normalization{v[0], v[1], v[2]};
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

static Normalization norm_of(const Config& cfg) { return cfg.normalization.value_or(default_normalization()); }

static std::string word_material(const Config& cfg) {
    Normalization nm = norm_of(cfg);
    std::ostringstream os;
    os << kArtifactVersion << "|n=" << cfg.strands << "|w=" << parse_braid(cfg.braid, cfg.strands).str() << "|norm=" << nm.dX << ","
       << nm.dh << "," << nm.da;
    return os.str();
}

std::string word_hash(const Config& cfg) { return hex64(fnv1a64(word_material(cfg))); }

std::string complex_key(const Config& cfg) { return hex64(fnv1a64(word_material(cfg) + (cfg.simplify ? "|simplified" : "|raw"))); }

int effective_qmax(const Config& cfg, const BraidWord& b) {
    if (cfg.qmax) return *cfg.qmax;
    return std::max(1, b.writhe() + b.n + 10);
}

static void write_file(const fs::path& p, const std::string& body) {
    fs::create_directories(p.parent_path().empty() ? fs::path(".") : p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw CliError("io_error", "cannot write " + tmp.string());
        f << body;
        if (!f) throw CliError("io_error", "cannot write " + tmp.string());
    }
    fs::rename(tmp, p);
}

BimoduleComplex load_or_build_complex(const Config& cfg, const BraidWord& b, bool* cache_hit) {
    if (cache_hit) *cache_hit = false;
    Normalization nm = norm_of(cfg);
    std::string material = word_material(cfg) + (cfg.simplify ? "|simplified" : "|raw");
    fs::path file;
    if (!cfg.cache_dir.empty()) {
        file = fs::path(cfg.cache_dir) / (complex_key(cfg) + ".complex.json");
        std::ifstream f(file);
        if (f) {
            try {
                nlohmann::json j = nlohmann::json::parse(f);
                if (j.at("version") == kArtifactVersion && j.at("key") == material) {
                    BimoduleComplex c = bimodule_complex_from_json(j.at("complex"));
                    if (cache_hit) *cache_hit = true;
                    return c;
                }
            } catch (const std::exception&) {
                // stale or corrupt entries are rebuilt
            }
        }
    }
    BimoduleComplex c = rouquier_complex(b, cfg.simplify, nm);
    if (!file.empty()) write_file(file, nlohmann::json{{"version", kArtifactVersion}, {"key", material}, {"complex", to_json(c)}}.dump() + "\n");
    return c;
}

static nlohmann::json cycles_of(const std::vector<int>& perm) {
    nlohmann::json out = nlohmann::json::array();
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        nlohmann::json cyc = nlohmann::json::array();
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = true;
            cyc.push_back(j + 1);
        }
        out.push_back(cyc);
    }
    return out;
}

static void apply_cuts(const Config& cfg, HHHTable& t) {
    if (cfg.cut.empty()) return;
    Window w = t.dims.window();
    for (auto& [axis, v] : cfg.cut) w.upper(t.dims.scheme().index(axis), v);
    t.dims.restrict_to(w);
}

nlohmann::json hhh_artifact(const Config& cfg, const BraidWord& b, const HHHTable& t) {
    Normalization nm = norm_of(cfg);
    nlohmann::json j;
    j["version"] = kArtifactVersion;
    j["braid"] = b.letters;
    j["strands"] = b.n;
    j["writhe"] = b.writhe();
    j["permutation_cycles"] = cycles_of(b.permutation());
    j["normalization"] = {{"dX", nm.dX}, {"dh", nm.dh}, {"da", nm.da}};
    j["window"] = to_json(t.dims)["window"];
    j["window_q"] = effective_qmax(cfg, b);
    j["entries"] = nlohmann::json::array();
    for (auto& [d, v] : t.dims.entries()) j["entries"].push_back({d[0], d[1], d[2], v});
    j["renders"] = nlohmann::json::object();
    for (Render r : cfg.renders) j["renders"][render_name(r)] = to_json(render(t, r));
    return j;
}

static void print_table(std::ostream& out, const std::string& title, const DimTable& t) {
    out << "# " << title << "\n";
    const auto& axes = t.scheme().axes();
    for (auto& [d, v] : t.entries()) {
        for (std::size_t i = 0; i < axes.size(); ++i) out << (i ? " " : "") << axes[i] << "=" << d[i];
        out << " : " << v << "\n";
    }
}

int run(const Config& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.strands < 1) throw CliError("config_error", "strands must be at least 1");
        if (cfg.jobs < 1) throw CliError("config_error", "jobs must be at least 1");
        if (cfg.power_bound < 1) throw CliError("config_error", "power bound must be at least 1");
        BraidWord b = parse_braid(cfg.braid, cfg.strands);
        if (cfg.support && b.n > 3) throw CliError("unsupported_stratum", "no built-in stratum ideals beyond three strands");
        int qmax = effective_qmax(cfg, b);
        BimoduleComplex c = load_or_build_complex(cfg, b);
        HHHEngine eng(c);
        HHHTable t = assemble_hhh(eng, qmax, cfg.jobs);
        t.word = b.letters;
        t.writhe = b.writhe();
        t.permutation = b.permutation();
        apply_cuts(cfg, t);
        std::string hash = word_hash(cfg);
        nlohmann::json art = hhh_artifact(cfg, b, t);
        write_file(fs::path(cfg.out_dir) / (hash + ".hhh.json"), art.dump(2) + "\n");
        int code = 0;
        nlohmann::json sup;
        if (cfg.support) {
            SupportReport r = support_report(b, eng, qmax, cfg.power_bound, cfg.jobs);
            sup = to_json(r);
            write_file(fs::path(cfg.out_dir) / (hash + ".support.json"), sup.dump(2) + "\n");
            for (auto& g : r.generators)
                if (g.verdict == Verdict::INCONCLUSIVE) code = 2;
        }
        if (cfg.table_format) {
            print_table(out, "HHH (a, X, C)", t.dims);
            for (Render r : cfg.renders) print_table(out, render_name(r), render(t, r));
            if (cfg.support) out << "# support verdict: " << sup["verdict"].get<std::string>() << "\n";
        } else {
            nlohmann::json j = art;
            if (cfg.support) j["support"] = sup;
            out << j.dump(2) << "\n";
        }
        return code;
    } catch (const CliError& e) {
        err << nlohmann::json{{"error", e.code}, {"message", e.what()}}.dump() << "\n";
    } catch (const std::invalid_argument& e) {
        err << nlohmann::json{{"error", "invalid_input"}, {"message", e.what()}}.dump() << "\n";
    } catch (const std::exception& e) {
        err << nlohmann::json{{"error", "internal_error"}, {"message", e.what()}}.dump() << "\n";
    }
    return 1;
}

}  // namespace hhh
