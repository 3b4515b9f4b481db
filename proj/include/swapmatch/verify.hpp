#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swapmatch/engines.hpp"
#include "swapmatch/masks.hpp"
#include "swapmatch/model.hpp"
#include "swapmatch/rng.hpp"

namespace swapmatch {

struct InstanceSpec {
    std::uint64_t seed = 1;
    /// Instance i uses sigmas[i % sigmas.size()].
    std::vector<unsigned> sigmas{2, 4, 8, 16};
    std::size_t m_min = 1;
    std::size_t m_max = 16;
    std::size_t n_min = 1;
    std::size_t n_max = 128;
    double plant_rate = 0.5;

    void validate() const {
        if (sigmas.empty()) throw std::invalid_argument("instance spec: empty sigma list");
        for (unsigned s : sigmas) {
            if (s < 2 || s > 256) throw std::invalid_argument("instance spec: sigma must be in [2..256]");
        }
        if (m_min < 1 || m_min > m_max) throw std::invalid_argument("instance spec: bad m range");
        if (n_min > n_max) throw std::invalid_argument("instance spec: bad n range");
        if (!(plant_rate >= 0.0 && plant_rate <= 1.0)) {
            throw std::invalid_argument("instance spec: plant rate must be in [0,1]");
        }
    }
};

/// Symbol k of an alphabet of size sigma: letters from 'a' when they suffice,
/// raw bytes otherwise.
inline char alphabet_symbol(unsigned sigma, std::uint64_t k) {
    return sigma <= 26 ? static_cast<char>('a' + k) : static_cast<char>(static_cast<unsigned char>(k));
}

/// A uniformly chosen swapped version of p. Distinct swap sets over unequal
/// neighbours give distinct strings, so counting the sets suffix by suffix
/// yields the right branch probabilities.
inline std::string random_swap_version(const Pattern& p, Rng& rng) {
    const std::size_t m = p.size();
    std::vector<double> count(m + 2, 1.0);
    for (std::size_t i = m; i-- > 1;) {
        count[i] = count[i + 1] + (p[i] != p[i + 1] ? count[i + 2] : 0.0);
    }
    std::string out = p.str();
    std::size_t i = 1;
    while (i < m) {
        if (p[i] != p[i + 1] && rng.unit() * count[i] < count[i + 2]) {
            std::swap(out[i - 1], out[i]);
            i += 2;
        } else {
            i += 1;
        }
    }
    return out;
}

struct Instance {
    Pattern pattern;
    std::string text;
};

inline Instance random_instance(const InstanceSpec& spec, std::uint64_t index) {
    spec.validate();
    Rng rng(spec.seed, index);
    const unsigned sigma = spec.sigmas[index % spec.sigmas.size()];
    const std::size_t m = rng.between(spec.m_min, spec.m_max);
    const std::size_t n = rng.between(std::max(spec.n_min, m), std::max(spec.n_max, m));
    std::string p(m, '\0');
    for (auto& c : p) c = alphabet_symbol(sigma, rng.below(sigma));
    std::string t(n, '\0');
    for (auto& c : t) c = alphabet_symbol(sigma, rng.below(sigma));
    Pattern pat(std::move(p));
    if (rng.chance(spec.plant_rate)) {
        const std::string version = random_swap_version(pat, rng);
        const std::size_t offset = rng.below(n - m + 1);
        std::copy(version.begin(), version.end(), t.begin() + static_cast<std::ptrdiff_t>(offset));
    }
    return {std::move(pat), std::move(t)};
}

struct NamedEngine {
    std::string name;
    std::function<MatchSet(const Pattern&, Text)> run;
};

inline std::vector<NamedEngine> default_engines() {
    return {
        {"pgraph", [](const Pattern& p, Text t) { return pgraph_search(PGraph(p), t); }},
        {"smalgo1", [](const Pattern& p, Text t) { return Smalgo1Engine(p).search(t); }},
        {"smalgo2", [](const Pattern& p, Text t) { return Smalgo2Engine(p).search(t); }},
    };
}

/// Harness self-test: a deliberately wrong engine that loses its last match.
inline NamedEngine broken_engine() {
    return {"broken", [](const Pattern& p, Text t) {
                MatchSet r = Smalgo2Engine(p).search(t);
                if (!r.empty()) r.pop_back();
                return r;
            }};
}

/// The single-register SMALGO-I recurrence, which is not exact.
inline NamedEngine literal_smalgo1_engine() {
    return {"literal-smalgo1", [](const Pattern& p, Text t) {
                return p.size() >= 3 ? literal::smalgo1_search(p, t) : Smalgo1Engine(p).search(t);
            }};
}

struct EngineOutcome {
    std::string engine;
    MatchSet matches;
    MatchSet false_positives;
    MatchSet false_negatives;

    [[nodiscard]] bool agrees() const { return false_positives.empty() && false_negatives.empty(); }
};

struct Discrepancy {
    std::string pattern;
    std::string text;
    MatchSet oracle;
    std::vector<EngineOutcome> engines;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> origin;  // (seed, index)
};

inline EngineOutcome classify(std::string name, MatchSet got, const MatchSet& oracle) {
    EngineOutcome o{std::move(name), std::move(got), {}, {}};
    std::set_difference(o.matches.begin(), o.matches.end(), oracle.begin(), oracle.end(),
                        std::back_inserter(o.false_positives));
    std::set_difference(oracle.begin(), oracle.end(), o.matches.begin(), o.matches.end(),
                        std::back_inserter(o.false_negatives));
    return o;
}

inline std::optional<Discrepancy> differential_check(const Pattern& p, Text t,
                                                     const std::vector<NamedEngine>& engines) {
    Discrepancy d{p.str(), std::string(t), oracle_search(p, t), {}, std::nullopt};
    bool differs = false;
    for (const auto& e : engines) {
        d.engines.push_back(classify(e.name, e.run(p, t), d.oracle));
        differs = differs || !d.engines.back().agrees();
    }
    if (!differs) return std::nullopt;
    return d;
}

inline std::optional<Discrepancy> differential_check(const Pattern& p, Text t) {
    return differential_check(p, t, default_engines());
}

/// Greedy local minimisation: cut the text from either end, cut the pattern
/// from either end, then merge symbols, keeping each step only while some
/// engine still disagrees with the oracle. Repeats until nothing applies.
inline Discrepancy shrink(const Discrepancy& d, const std::vector<NamedEngine>& engines) {
    Discrepancy best = d;
    auto attempt = [&](const std::string& p, const std::string& t) {
        if (p.empty()) return false;
        auto r = differential_check(Pattern(p), t, engines);
        if (!r) return false;
        r->origin = best.origin;
        best = std::move(*r);
        return true;
    };
    auto cut = [&](bool pattern_side) {
        bool any = false;
        for (bool front : {true, false}) {
            std::size_t step = std::max<std::size_t>(1, (pattern_side ? best.pattern : best.text).size() / 2);
            while (step > 0) {
                const std::string& s = pattern_side ? best.pattern : best.text;
                if (step > s.size() || (pattern_side && step >= s.size())) {
                    step /= 2;
                    continue;
                }
                std::string shorter = front ? s.substr(step) : s.substr(0, s.size() - step);
                const bool ok = pattern_side ? attempt(shorter, best.text) : attempt(best.pattern, shorter);
                if (ok) {
                    any = true;
                } else {
                    step /= 2;
                }
            }
        }
        return any;
    };
    auto remap = [&]() {
        std::set<char> used(best.pattern.begin(), best.pattern.end());
        used.insert(best.text.begin(), best.text.end());
        const std::vector<char> syms(used.begin(), used.end());
        for (std::size_t hi = syms.size(); hi-- > 1;) {
            for (std::size_t lo = 0; lo < hi; ++lo) {
                std::string p = best.pattern;
                std::string t = best.text;
                std::replace(p.begin(), p.end(), syms[hi], syms[lo]);
                std::replace(t.begin(), t.end(), syms[hi], syms[lo]);
                if (attempt(p, t)) return true;
            }
        }
        return false;
    };
    bool changed = true;
    while (changed) {
        changed = cut(false);
        changed = cut(true) || changed;
        changed = remap() || changed;
    }
    return best;
}

inline Discrepancy shrink(const Discrepancy& d) { return shrink(d, default_engines()); }

inline std::string render_positions(const MatchSet& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

inline std::string format_discrepancy(const Discrepancy& d) {
    std::ostringstream os;
    os << "counterexample";
    if (d.origin) os << " seed=" << d.origin->first << " index=" << d.origin->second;
    os << "\n  pattern: " << render_bytes(d.pattern) << " (m=" << d.pattern.size() << ")\n";
    os << "  text:    " << render_bytes(d.text) << " (n=" << d.text.size() << ")\n";
    os << "  oracle:  " << render_positions(d.oracle) << "\n";
    for (const auto& e : d.engines) {
        os << "  " << e.engine << ": " << render_positions(e.matches);
        if (!e.false_positives.empty()) os << " false-positive " << render_positions(e.false_positives);
        if (!e.false_negatives.empty()) os << " false-negative " << render_positions(e.false_negatives);
        os << "\n";
    }
    return os.str();
}

struct VerifyReport {
    std::size_t checked = 0;
    std::size_t discrepancies = 0;
    /// Shrunken counterexamples, in index order, at most the requested number.
    std::vector<Discrepancy> counterexamples;

    [[nodiscard]] std::string summary() const {
        return "checked=" + std::to_string(checked) + " discrepancies=" + std::to_string(discrepancies);
    }
};

inline VerifyReport run_verification(const InstanceSpec& spec, std::size_t count,
                                     const std::vector<NamedEngine>& engines, std::size_t keep = 5) {
    spec.validate();
    VerifyReport report;
    for (std::uint64_t i = 0; i < count; ++i) {
        Instance inst = random_instance(spec, i);
        ++report.checked;
        auto d = differential_check(inst.pattern, inst.text, engines);
        if (!d) continue;
        ++report.discrepancies;
        if (report.counterexamples.size() < keep) {
            d->origin = std::make_pair(spec.seed, i);
            report.counterexamples.push_back(shrink(*d, engines));
        }
    }
    return report;
}

}  // namespace swapmatch
