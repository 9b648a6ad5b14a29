#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhh/supports.hpp"

namespace hhh {

inline constexpr const char* kArtifactVersion = "hhh-artifact-1";

struct Config {
    int strands = 1;
    std::string braid;
    std::optional<int> qmax;               // default: writhe + strands + 10
    std::map<std::string, long long> cut;  // extra upper bounds on a, X or C
    std::vector<Render> renders{Render::qat, Render::tilde};
    bool simplify = true;
    bool support = false;
    int power_bound = 6;
    int jobs = 1;
    std::string cache_dir;  // empty disables the cache
    std::string out_dir = ".";
    bool table_format = false;
    std::optional<Normalization> normalization;
};

// Carries a machine-readable code next to the message.
struct CliError : std::runtime_error {
    std::string code;
    CliError(std::string c, const std::string& what) : std::runtime_error(what), code(std::move(c)) {}
};

BraidWord parse_braid(const std::string& text, int n);
// "8" sets q; "q=8,C=12,a=1" sets per-axis bounds.
void parse_cutoff(const std::string& text, Config& cfg);
Normalization parse_normalization(const std::string& text);  // "dX,dh,da"

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);
// Covers everything the complex depends on: word, strands, simplification and normalization.
std::string complex_key(const Config& cfg);
// Covers the word, strands and normalization; names the artifacts.
std::string word_hash(const Config& cfg);

int effective_qmax(const Config& cfg, const BraidWord& b);

// Cached or freshly built Rouquier complex.
BimoduleComplex load_or_build_complex(const Config& cfg, const BraidWord& b, bool* cache_hit = nullptr);

nlohmann::json hhh_artifact(const Config& cfg, const BraidWord& b, const HHHTable& t);

// Exit code 0 on success, 2 when a support verdict is INCONCLUSIVE, 1 on error.
int run(const Config& cfg, std::ostream& out, std::ostream& err);

}  // namespace hhh
