#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "swapmatch/engines.hpp"
#include "swapmatch/model.hpp"
#include "swapmatch/rng.hpp"

namespace swapmatch {

/// Symbols are the raw bytes 0..sigma-1.
inline std::string gen_random_text(unsigned sigma, std::size_t n, std::uint64_t seed) {
    if (sigma < 2 || sigma > 256) throw std::invalid_argument("gen_random_text: sigma must be in [2..256]");
    if (n < 1) throw std::invalid_argument("gen_random_text: n must be at least 1");
    Rng rng(seed);
    std::string t(n, '\0');
    for (auto& c : t) c = static_cast<char>(static_cast<unsigned char>(rng.below(sigma)));
    return t;
}

/// Half random (rounded up) over the symbols occurring in t, half cut from t.
inline std::vector<Pattern> sample_patterns(Text t, std::size_t m, std::size_t count, std::uint64_t seed) {
    if (count < 2) throw std::invalid_argument("sample_patterns: count must be at least 2");
    if (m < 1 || m > t.size()) throw std::invalid_argument("sample_patterns: need 1 <= m <= n");
    bool present[256] = {};
    for (char c : t) present[static_cast<unsigned char>(c)] = true;
    std::string alphabet;
    for (unsigned c = 0; c < 256; ++c) {
        if (present[c]) alphabet.push_back(static_cast<char>(c));
    }
    Rng rng(seed);
    std::vector<Pattern> out;
    const std::size_t random_count = (count + 1) / 2;
    for (std::size_t k = 0; k < random_count; ++k) {
        std::string p(m, '\0');
        for (auto& c : p) c = alphabet[rng.below(alphabet.size())];
        out.emplace_back(std::move(p));
    }
    for (std::size_t k = random_count; k < count; ++k) {
        const std::size_t off = rng.below(t.size() - m + 1);
        out.emplace_back(std::string(t.substr(off, m)));
    }
    return out;
}

enum class BenchAlgo { smalgo1, smalgo2, dp, oracle };

inline const char* algo_name(BenchAlgo a) {
    switch (a) {
        case BenchAlgo::smalgo1: return "smalgo1";
        case BenchAlgo::smalgo2: return "smalgo2";
        case BenchAlgo::dp: return "dp";
        case BenchAlgo::oracle: return "oracle";
    }
    return "?";
}

inline std::optional<BenchAlgo> parse_bench_algo(std::string_view s) {
    for (BenchAlgo a : {BenchAlgo::smalgo1, BenchAlgo::smalgo2, BenchAlgo::dp, BenchAlgo::oracle}) {
        if (s == algo_name(a)) return a;
    }
    return std::nullopt;
}

inline const std::vector<std::size_t>& default_bench_lengths() {
    static const std::vector<std::size_t> lengths{4, 8, 12, 16, 20, 24, 28, 32};
    return lengths;
}

inline constexpr std::size_t kDefaultPatternsPerLength = 100;

struct BenchProblem {
    std::string name;
    /// Generated text parameters; ignored when corpus_path is set.
    unsigned sigma = 4;
    std::size_t text_size = std::size_t{4} << 20;
    std::uint64_t seed = 1;
    std::optional<std::string> corpus_path;
    std::vector<std::size_t> lengths = default_bench_lengths();
    std::size_t patterns_per_length = kDefaultPatternsPerLength;

    static BenchProblem random(unsigned sigma, std::size_t size, std::uint64_t seed) {
        BenchProblem p;
        p.name = "Rand" + std::to_string(sigma);
        p.sigma = sigma;
        p.text_size = size;
        p.seed = seed;
        return p;
    }
    static BenchProblem corpus(std::string path) {
        BenchProblem p;
        p.name = path;
        p.corpus_path = std::move(path);
        return p;
    }
};

struct BenchRow {
    std::string algo;
    std::string problem;
    unsigned sigma = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t patterns = 0;
    double prep_ms = 0;
    double search_ms = 0;
    std::size_t matches = 0;
    /// Set on rows that stand for a failed problem or cell.
    std::optional<std::string> error;

    [[nodiscard]] double per_pattern_ms() const { return patterns ? search_ms / static_cast<double>(patterns) : 0.0; }
};

struct BenchReport {
    std::vector<BenchRow> rows;
    /// One line per cell whose engines disagree on the total match count.
    std::vector<std::string> mismatches;

    [[nodiscard]] bool consistent() const { return mismatches.empty(); }

    [[nodiscard]] std::string to_csv() const {
        std::string out = "algo,problem,sigma,m,n,patterns,prep_ms,search_ms,matches\n";
        char buf[64];
        for (const auto& r : rows) {
            out += r.algo + "," + r.problem + "," + std::to_string(r.sigma) + "," + std::to_string(r.m) + "," +
                   std::to_string(r.n) + "," + std::to_string(r.patterns) + ",";
            std::snprintf(buf, sizeof buf, "%.3f,%.3f,", r.prep_ms, r.search_ms);
            out += buf + std::to_string(r.matches) + "\n";
        }
        return out;
    }

    /// One block per problem: a row per pattern length, a column of search
    /// milliseconds per algorithm.
    [[nodiscard]] std::string to_table() const {
        std::ostringstream os;
        std::vector<std::string> problems;
        for (const auto& r : rows) {
            if (std::find(problems.begin(), problems.end(), r.problem) == problems.end()) problems.push_back(r.problem);
        }
        for (const auto& prob : problems) {
            std::vector<std::string> algos;
            std::map<std::size_t, std::map<std::string, double>> cells;
            const BenchRow* any = nullptr;
            for (const auto& r : rows) {
                if (r.problem != prob) continue;
                if (r.error) {
                    os << prob << ": " << *r.error << "\n\n";
                    continue;
                }
                any = &r;
                if (std::find(algos.begin(), algos.end(), r.algo) == algos.end()) algos.push_back(r.algo);
                cells[r.m][r.algo] = r.search_ms;
            }
            if (!any) continue;
            os << prob << " (sigma=" << any->sigma << ", n=" << any->n << ", patterns=" << any->patterns
               << ", search ms)\n";
            char buf[64];
            std::snprintf(buf, sizeof buf, "%4s", "m");
            os << buf;
            for (const auto& a : algos) {
                std::snprintf(buf, sizeof buf, " %12s", a.c_str());
                os << buf;
            }
            os << "\n";
            for (const auto& [m, byalgo] : cells) {
                std::snprintf(buf, sizeof buf, "%4zu", m);
                os << buf;
                for (const auto& a : algos) {
                    auto it = byalgo.find(a);
                    if (it == byalgo.end()) {
                        std::snprintf(buf, sizeof buf, " %12s", "-");
                    } else {
                        std::snprintf(buf, sizeof buf, " %12.3f", it->second);
                    }
                    os << buf;
                }
                os << "\n";
            }
            os << "\n";
        }
        return os.str();
    }
};

namespace detail {

struct Cell {
    double prep_ms;
    double search_ms;
    std::size_t matches;
};

inline double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

template <class Prep, class Search>
Cell time_cell(const std::vector<Pattern>& patterns, std::size_t repetitions, Prep prep, Search search) {
    Cell best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0};
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        std::vector<decltype(prep(patterns.front()))> prepared;
        prepared.reserve(patterns.size());
        for (const auto& p : patterns) prepared.push_back(prep(p));
        best.prep_ms = std::min(best.prep_ms, elapsed_ms(t0));

        t0 = std::chrono::steady_clock::now();
        std::size_t total = 0;
        for (const auto& e : prepared) total += search(e);
        best.search_ms = std::min(best.search_ms, elapsed_ms(t0));
        best.matches = total;
    }
    return best;
}

inline Cell run_cell(BenchAlgo algo, const std::vector<Pattern>& patterns, Text t, std::size_t reps) {
    switch (algo) {
        case BenchAlgo::smalgo1:
            return time_cell(patterns, reps, [](const Pattern& p) { return Smalgo1Engine(p); },
                             [t](const Smalgo1Engine& e) {
                                 std::size_t c = 0;
                                 e.scan(t.begin(), t.end(), [&c](std::size_t) { ++c; });
                                 return c;
                             });
        case BenchAlgo::smalgo2:
            return time_cell(patterns, reps, [](const Pattern& p) { return Smalgo2Engine(p); },
                             [t](const Smalgo2Engine& e) {
                                 std::size_t c = 0;
                                 e.scan(t.begin(), t.end(), [&c](std::size_t) { ++c; });
                                 return c;
                             });
        case BenchAlgo::dp:
            return time_cell(patterns, reps, [](const Pattern& p) { return PGraph(p); },
                             [t](const PGraph& g) { return pgraph_search(g, t).size(); });
        case BenchAlgo::oracle:
            return time_cell(patterns, reps, [](const Pattern& p) { return p; },
                             [t](const Pattern& p) { return oracle_search(p, t).size(); });
    }
    throw std::logic_error("run_cell: unknown algorithm");
}

inline std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) return std::nullopt;
    return data;
}

inline unsigned distinct_symbols(Text t) {
    bool seen[256] = {};
    unsigned n = 0;
    for (char c : t) {
        auto& s = seen[static_cast<unsigned char>(c)];
        if (!s) ++n;
        s = true;
    }
    return n;
}

}  // namespace detail

/// Times each (problem, m, algorithm) cell: preprocessing of all patterns and
/// searching with all of them, each the minimum over `repetitions` runs.
/// Problems whose text cannot be obtained yield a single error row.
inline BenchReport run_bench(const std::vector<BenchProblem>& problems, const std::vector<BenchAlgo>& algos,
                             std::size_t repetitions = 3) {
    if (problems.empty() || algos.empty()) throw std::invalid_argument("run_bench: need a problem and an algorithm");
    if (repetitions < 1) throw std::invalid_argument("run_bench: repetitions must be at least 1");
    BenchReport report;
    for (const auto& prob : problems) {
        std::string text;
        unsigned sigma = prob.sigma;
        if (prob.corpus_path) {
            auto data = detail::read_file(*prob.corpus_path);
            if (!data || data->empty()) {
                BenchRow r;
                r.algo = "error";
                r.problem = prob.name;
                r.error = data ? "empty corpus file" : "cannot read corpus file";
                report.rows.push_back(r);
                continue;
            }
            text = std::move(*data);
            sigma = detail::distinct_symbols(text);
        } else {
            text = gen_random_text(prob.sigma, prob.text_size, prob.seed);
        }
        for (std::size_t m : prob.lengths) {
            if (m < 1 || m > text.size()) {
                BenchRow r;
                r.algo = "error";
                r.problem = prob.name;
                r.m = m;
                r.n = text.size();
                r.error = "pattern length " + std::to_string(m) + " does not fit the text";
                report.rows.push_back(r);
                continue;
            }
            const auto patterns = sample_patterns(text, m, prob.patterns_per_length, prob.seed * 1000003ULL + m);
            std::optional<std::size_t> expected;
            std::string first_algo;
            for (BenchAlgo a : algos) {
                const detail::Cell c = detail::run_cell(a, patterns, text, repetitions);
                report.rows.push_back(
                    {algo_name(a), prob.name, sigma, m, text.size(), patterns.size(), c.prep_ms, c.search_ms, c.matches,
                     std::nullopt});
                if (!expected) {
                    expected = c.matches;
                    first_algo = algo_name(a);
                } else if (*expected != c.matches) {
                    report.mismatches.push_back(prob.name + " m=" + std::to_string(m) + ": " + first_algo + "=" +
                                                std::to_string(*expected) + " " + algo_name(a) + "=" +
                                                std::to_string(c.matches));
                }
            }
        }
    }
    return report;
}

}  // namespace swapmatch
