#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "swapmatch/swapmatch.hpp"

namespace swapmatch::cli {

enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::uint64_t parse_number(const std::string& s, const char* what) {
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) throw UsageError(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

inline std::vector<std::uint64_t> parse_list(const std::string& s, const char* what) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(item, what));
    if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
    return out;
}

/// "A..B" or a single "A".
inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s, const char* what) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const auto v = parse_number(s, what);
        return {v, v};
    }
    const auto lo = parse_number(s.substr(0, dots), what);
    const auto hi = parse_number(s.substr(dots + 2), what);
    if (lo > hi) throw UsageError(std::string("empty ") + what + " range '" + s + "'");
    return {lo, hi};
}

inline std::string read_all(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string read_path(const std::string& path, std::istream& in) {
    if (path == "-") return read_all(in);
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read '" + path + "'");
    std::string data = read_all(f);
    if (f.bad()) throw UsageError("error reading '" + path + "'");
    return data;
}

struct MatchOptions {
    std::string algo = "smalgo2";
    std::string pattern;
    std::string pattern_file;
    std::string text = "-";
    std::string format = "plain";
};

inline MatchSet run_algo(const std::string& algo, const Pattern& p, Text t) {
    if (algo == "smalgo1") return Smalgo1Engine(p).search(t);
    if (algo == "smalgo2") return Smalgo2Engine(p).search(t);
    if (algo == "dp") return pgraph_search(PGraph(p), t);
    if (algo == "oracle") return oracle_search(p, t);
    if (algo == "shiftand") return shift_and_search(p, t);
    return degenerate_shift_and_search(p, t);
}

inline int cmd_match(const MatchOptions& o, std::istream& in, std::ostream& out) {
    std::string pat = o.pattern_file.empty() ? o.pattern : read_path(o.pattern_file, in);
    if (pat.empty()) throw UsageError("pattern must not be empty");
    const std::string text = read_path(o.text, in);
    const Pattern p(std::move(pat));
    const MatchSet hits = run_algo(o.algo, p, text);
    if (o.format == "json") {
        nlohmann::ordered_json doc = {{"pattern_len", p.size()}, {"matches", hits}};
        out << doc.dump() << "\n";
    } else {
        for (std::size_t e : hits) out << e << "\n";
    }
    return kOk;
}

struct VerifyOptions {
    std::string seeds = "1000";
    std::string seed = "1";
    std::string sigma = "2,4,8,16";
    std::string m = "1..16";
    std::string n = "1..128";
    double plant = 0.5;
    std::size_t max_reports = 5;
    bool broken_engine = false;
    bool include_literal = false;
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    InstanceSpec spec;
    spec.seed = parse_number(o.seed, "seed");
    spec.sigmas.clear();
    for (auto s : parse_list(o.sigma, "sigma")) spec.sigmas.push_back(static_cast<unsigned>(std::min<std::uint64_t>(s, 1000)));
    std::tie(spec.m_min, spec.m_max) = parse_range(o.m, "m");
    std::tie(spec.n_min, spec.n_max) = parse_range(o.n, "n");
    spec.plant_rate = o.plant;
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    auto engines = default_engines();
    if (o.broken_engine) engines.push_back(broken_engine());
    if (o.include_literal) engines.push_back(literal_smalgo1_engine());
    const VerifyReport r = run_verification(spec, parse_number(o.seeds, "seeds"), engines, o.max_reports);
    for (const auto& d : r.counterexamples) out << format_discrepancy(d) << "\n";
    out << r.summary() << "\n";
    return r.discrepancies == 0 ? kOk : kVerifyFailed;
}

struct BenchOptions {
    std::string sigma = "4";
    std::string m;
    std::size_t text_size = std::size_t{4} << 20;
    std::size_t patterns = kDefaultPatternsPerLength;
    std::string algos = "smalgo1,smalgo2,dp";
    std::vector<std::string> corpus;
    std::uint64_t seed = 1;
    std::size_t reps = 3;
    std::string format = "csv";
    bool sigma_given = false;
};

inline int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<std::size_t> lengths = default_bench_lengths();
    if (!o.m.empty()) {
        lengths.clear();
        for (auto v : parse_list(o.m, "m")) {
            if (v < 1) throw UsageError("pattern lengths must be positive");
            lengths.push_back(v);
        }
    }
    if (o.patterns < 2) throw UsageError("--patterns must be at least 2");
    if (o.text_size < 1) throw UsageError("--text-size must be positive");
    if (o.reps < 1) throw UsageError("--reps must be at least 1");
    std::vector<BenchAlgo> algos;
    std::stringstream ss(o.algos);
    for (std::string a; std::getline(ss, a, ',');) {
        auto parsed = parse_bench_algo(a);
        if (!parsed) throw UsageError("bench compares swap matchers only: unknown algorithm '" + a + "'");
        algos.push_back(*parsed);
    }
    if (algos.empty()) throw UsageError("empty --algos list");

    std::vector<BenchProblem> problems;
    if (o.corpus.empty() || o.sigma_given) {
        for (auto s : parse_list(o.sigma, "sigma")) {
            if (s < 2 || s > 256) throw UsageError("sigma must be in [2..256]");
            problems.push_back(BenchProblem::random(static_cast<unsigned>(s), o.text_size, o.seed));
        }
    }
    for (const auto& path : o.corpus) problems.push_back(BenchProblem::corpus(path));
    for (auto& p : problems) {
        p.lengths = lengths;
        p.patterns_per_length = o.patterns;
    }

    const BenchReport r = run_bench(problems, algos, o.reps);
    for (const auto& row : r.rows) {
        if (row.error) err << "warning: " << row.problem << ": " << *row.error << "\n";
    }
    out << (o.format == "table" ? r.to_table() : r.to_csv());
    if (!r.consistent()) {
        for (const auto& m : r.mismatches) err << "error: match counts differ: " << m << "\n";
        return kVerifyFailed;
    }
    return kOk;
}

struct GenOptions {
    unsigned sigma = 4;
    std::size_t size = 0;
    std::uint64_t seed = 1;
    std::string out;
};

inline int cmd_gen(const GenOptions& o) {
    if (o.sigma < 2 || o.sigma > 256) throw UsageError("--sigma must be in [2..256]");
    if (o.size < 1) throw UsageError("--size must be positive");
    const std::string t = gen_random_text(o.sigma, o.size, o.seed);
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + o.out + "'");
    f.write(t.data(), static_cast<std::streamsize>(t.size()));
    f.close();
    if (!f) throw UsageError("error writing '" + o.out + "'");
    return kOk;
}

struct MasksOptions {
    std::string pattern;
    std::string which = "all";
};

inline std::string render_masks(const Pattern& p, const std::string& which) {
    if (which == "d") return dump_dmasks(build_dmasks(p));
    if (which == "p3") return dump_mask_table(build_triple_pmasks(p));
    if (which == "p2") return dump_mask_table(build_pair_pmasks(p));
    const LevelMaskTables levels(p);
    if (which == "up") return dump_level_masks(levels, EdgeShape::up);
    if (which == "down") return dump_level_masks(levels, EdgeShape::down);
    return dump_level_masks(levels, EdgeShape::middle);
}

inline int cmd_masks(const MasksOptions& o, std::ostream& out) {
    if (o.pattern.empty()) throw UsageError("pattern must not be empty");
    const Pattern p(o.pattern);
    if (o.which != "all") {
        out << render_masks(p, o.which);
        return kOk;
    }
    bool first = true;
    for (const char* w : {"d", "p3", "p2", "up", "down", "middle"}) {
        if (!first) out << "\n";
        first = false;
        out << "[" << w << "]\n" << render_masks(p, w);
    }
    return kOk;
}

/// Entry point shared by the binary and the tests. `args` excludes argv[0].
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Swap pattern matching: search, verification, benchmarks, mask dumps"};
    app.name("swapmatch");
    app.require_subcommand(1, 1);

    MatchOptions mo;
    auto* match = app.add_subcommand("match", "Report 1-based end positions of swap matches");
    match->add_option("--algo", mo.algo, "Matcher")
        ->check(CLI::IsMember({"smalgo1", "smalgo2", "dp", "oracle", "shiftand", "degenerate"}))
        ->capture_default_str();
    auto* pat_opt = match->add_option("--pattern", mo.pattern, "Pattern bytes");
    auto* pat_file = match->add_option("--pattern-file", mo.pattern_file, "File holding the pattern bytes");
    pat_opt->excludes(pat_file);
    match->add_option("--text", mo.text, "Text file, '-' for standard input")->capture_default_str();
    match->add_option("--format", mo.format, "Output format")
        ->check(CLI::IsMember({"plain", "json"}))
        ->capture_default_str();

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "Differential check of all engines against the oracle");
    verify->add_option("--seeds", vo.seeds, "Number of instances")->capture_default_str();
    verify->add_option("--seed", vo.seed, "Base seed")->capture_default_str();
    verify->add_option("--sigma", vo.sigma, "Alphabet sizes, comma separated")->capture_default_str();
    verify->add_option("--m", vo.m, "Pattern length range MIN..MAX")->capture_default_str();
    verify->add_option("--n", vo.n, "Text length range MIN..MAX")->capture_default_str();
    verify->add_option("--plant", vo.plant, "Fraction of instances with a planted swapped version")
        ->capture_default_str();
    verify->add_option("--max-reports", vo.max_reports, "Counterexamples to shrink and print")->capture_default_str();
    verify->add_flag("--broken-engine", vo.broken_engine, "Add an engine that drops its last match (self-test)");
    verify->add_flag("--include-literal", vo.include_literal, "Add the single-register SMALGO-I recurrence");

    BenchOptions bo;
    auto* bench = app.add_subcommand("bench", "Time swap matchers on random texts and corpora");
    auto* sigma_opt = bench->add_option("--sigma", bo.sigma, "Alphabet sizes of generated texts")->capture_default_str();
    bench->add_option("--m", bo.m, "Pattern lengths, comma separated (default 4,8,...,32)");
    bench->add_option("--text-size", bo.text_size, "Generated text size in bytes")->capture_default_str();
    bench->add_option("--patterns", bo.patterns, "Patterns per length")->capture_default_str();
    bench->add_option("--algos", bo.algos, "smalgo1, smalgo2, dp, oracle")->capture_default_str();
    bench->add_option("--corpus", bo.corpus, "Corpus files");
    bench->add_option("--seed", bo.seed, "Seed for texts and patterns")->capture_default_str();
    bench->add_option("--reps", bo.reps, "Repetitions; the minimum time is kept")->capture_default_str();
    bench->add_option("--format", bo.format, "Output format")
        ->check(CLI::IsMember({"csv", "table"}))
        ->capture_default_str();

    GenOptions go;
    auto* gen = app.add_subcommand("gen", "Write a uniform random text over bytes 0..sigma-1");
    gen->add_option("--sigma", go.sigma, "Alphabet size")->required();
    gen->add_option("--size", go.size, "Size in bytes")->required();
    gen->add_option("--seed", go.seed, "Seed")->capture_default_str();
    gen->add_option("--out", go.out, "Output path")->required();

    MasksOptions ko;
    auto* masks = app.add_subcommand("masks", "Dump the preprocessing masks of a pattern");
    masks->add_option("--pattern", ko.pattern, "Pattern")->required();
    masks->add_option("--which", ko.which, "Table to dump")
        ->check(CLI::IsMember({"d", "p3", "p2", "up", "down", "middle", "all"}))
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*match) {
            if (!*pat_opt && !*pat_file) throw UsageError("match needs --pattern or --pattern-file");
            return cmd_match(mo, in, out);
        }
        if (*verify) return cmd_verify(vo, out);
        if (*bench) {
            bo.sigma_given = static_cast<bool>(*sigma_opt);
            return cmd_bench(bo, out, err);
        }
        if (*gen) return cmd_gen(go);
        return cmd_masks(ko, out);
    } catch (const UsageError& e) {
        err << "swapmatch: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "swapmatch: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace swapmatch::cli
