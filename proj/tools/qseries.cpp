// qseries: compute constrained partition tables, verify the built-in
// identity catalog and congruence families, and scan for new congruences.

#include <atomic>
#include <cstdint>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qseries/qseries.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qseries;

constexpr const char* kJsonVersion = "1";

// entries behind repeated 2-extractions burn a 16x precision factor;
// refuse budgets that cannot possibly carry them
constexpr std::int64_t kDeepEntryFloor = 16 * 200;

enum exit_code : int { exit_pass = 0, exit_fail = 1, exit_usage = 2 };

struct run_output {
    std::vector<verification_report> reports;
    bool as_json = false;
    json config;
};

json report_to_json(const verification_report& r) {
    json j;
    j["id"] = r.id;
    j["status"] = to_string(r.status);
    j["n_checked"] = r.n_checked;
    j["depth"] = r.depth;
    if (r.witness) {
        json w;
        w["index"] = r.witness->index;
        w["argument"] = r.witness->argument;
        w["lhs"] = r.witness->lhs;
        w["rhs"] = r.witness->rhs;
        j["counterexample"] = w;
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

void emit_json(const json& config, const json& results) {
    json out;
    out["version"] = kJsonVersion;
    out["config"] = config;
    out["results"] = results;
    std::cout << out.dump(2) << "\n";
}

int finish_reports(const run_output& out) {
    if (out.as_json) {
        json results = json::array();
        for (const auto& r : out.reports) results.push_back(report_to_json(r));
        emit_json(out.config, results);
    } else {
        for (const auto& r : out.reports) {
            std::cout << r.id << " " << to_string(r.status);
            switch (r.status) {
            case verification_report::status_t::pass:
                std::cout << " (" << r.n_checked << " terms)";
                break;
            case verification_report::status_t::fail:
                if (r.witness)
                    std::cout << " at n=" << r.witness->index << " (argument "
                              << r.witness->argument << "): " << r.witness->lhs
                              << " != " << r.witness->rhs;
                break;
            case verification_report::status_t::insufficient_precision:
                std::cout << " (achievable " << r.n_checked
                          << " terms, depth " << r.depth << ")";
                break;
            }
            std::cout << "\n";
        }
    }
    bool any_fail = false, any_short = false;
    for (const auto& r : out.reports) {
        any_fail |= r.status == verification_report::status_t::fail;
        any_short |=
            r.status == verification_report::status_t::insufficient_precision;
    }
    if (any_fail) return exit_fail;
    if (any_short) return exit_usage;
    return exit_pass;
}

// Fixed-order worker pool: task i writes slot i, so output order never
// depends on scheduling.
std::vector<verification_report>
run_pool(const std::vector<std::function<verification_report()>>& tasks,
         int jobs, bool quiet) {
    std::vector<verification_report> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            results[i] = tasks[i]();
            if (!quiet) {
                std::ostringstream line;
                line << results[i].id << " " << to_string(results[i].status)
                     << "\n";
                std::cerr << line.str();
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; ++j) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    return results;
}

std::vector<std::int64_t> parse_modulus_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoll(item));
        } catch (...) {
            throw error("bad modulus '" + item + "' in --mod");
        }
    }
    if (out.empty()) throw error("--mod needs at least one modulus");
    return out;
}

bool is_deep_entry(const identity_entry& e) {
    return achievable_depth(e, kDeepEntryFloor) < e.default_depth;
}

int cmd_verify_identity(const std::string& selection, std::optional<std::int64_t> depth,
                        bool audit, int jobs, bool json_out,
                        const std::string& catalog_file) {
    std::vector<identity_entry> entries;
    if (!catalog_file.empty()) {
        entries = load_catalog_file(catalog_file);
        if (selection != "all") {
            entries = {find_entry(entries, selection)};
        }
    } else if (selection == "all") {
        entries = builtin_catalog();
    } else {
        entries = {find_entry(builtin_catalog(), selection)};
    }

    if (depth) {
        for (const auto& e : entries)
            if (*depth < kDeepEntryFloor && is_deep_entry(e)) {
                std::cerr << "error: --depth " << *depth << " is below the "
                          << kDeepEntryFloor << " floor required by entry "
                          << e.id << " (triple-extraction precision budget)\n";
                return exit_usage;
            }
    }

    std::vector<std::function<verification_report()>> tasks;
    for (const auto& e : entries) {
        tasks.push_back([e, depth, audit] {
            if (depth)
                return verify_identity_budgeted(e, e.default_depth, *depth, audit);
            return verify_identity(e, e.default_depth, audit);
        });
    }
    run_output out;
    out.reports = run_pool(tasks, jobs, json_out || tasks.size() == 1);
    out.as_json = json_out;
    out.config = {{"command", "verify-identity"},
                  {"selection", selection},
                  {"depth", depth ? json(*depth) : json(nullptr)},
                  {"mode", audit ? "exact-audit" : "fast"},
                  {"catalog", catalog_file.empty() ? json(nullptr) : json(catalog_file)}};
    return finish_reports(out);
}

int cmd_verify_theorem(const std::string& which, std::optional<std::int64_t> prime,
                       std::int64_t alpha, std::optional<std::int64_t> nmax_opt,
                       bool exact_table, int jobs, bool json_out) {
    std::vector<congruence_claim> claims;
    std::int64_t nmax = 0;
    if (which == "lemma1.1") {
        claims = claims_lemma11();
        nmax = nmax_opt.value_or(1000);
    } else if (which == "3.1") {
        if (!prime) throw error("theorem 3.1 needs --prime");
        claims = claims_thm31(*prime, alpha);
        nmax = nmax_opt.value_or(50);
    } else if (which == "4.1") {
        claims = claims_thm41(alpha);
        nmax = nmax_opt.value_or(100);
    } else if (which == "5.1") {
        if (!prime) throw error("theorem 5.1 needs --prime");
        claims = claims_thm51(*prime, alpha);
        nmax = nmax_opt.value_or(100);
    } else if (which == "6.1") {
        claims = claims_thm61();
        nmax = nmax_opt.value_or(1000);
    } else {
        throw error("unknown theorem '" + which +
                    "' (expected 3.1, 4.1, 5.1, 6.1 or lemma1.1)");
    }

    std::int64_t table_n = 0, lcm = 1;
    for (const auto& c : claims) {
        table_n = std::max(table_n, c.step * nmax + c.offset);
        lcm = std::lcm(lcm, c.modulus);
    }
    if (table_n > 1000000)
        throw error("largest argument " + std::to_string(table_n) +
                    " exceeds desk scale (1e6); reduce --nmax or --alpha");

    run_output out;
    out.as_json = json_out;
    if (exact_table) {
        auto table = count_rd(4, 9, table_n, exact_ring{});
        std::vector<std::function<verification_report()>> tasks;
        for (const auto& c : claims)
            tasks.push_back([c, nmax, &table] { return check_claim(c, nmax, table); });
        out.reports = run_pool(tasks, jobs, json_out);
    } else {
        auto table = count_rd(4, 9, table_n, mod_ring(static_cast<std::uint64_t>(lcm)));
        std::vector<std::function<verification_report()>> tasks;
        for (const auto& c : claims)
            tasks.push_back([c, nmax, &table] { return check_claim(c, nmax, table); });
        out.reports = run_pool(tasks, jobs, json_out);
    }

    out.config = {{"command", "verify-theorem"},
                  {"theorem", which},
                  {"prime", prime ? json(*prime) : json(nullptr)},
                  {"alpha", alpha},
                  {"nmax", nmax},
                  {"table", exact_table ? "exact" : "mod " + std::to_string(lcm)}};
    return finish_reports(out);
}

int cmd_verify_aux(const std::string& source, std::int64_t prime,
                   std::int64_t alpha, std::int64_t nmax, bool json_out) {
    aux_source src;
    if (source == "a")
        src = aux_source::aux_a;
    else if (source == "b")
        src = aux_source::aux_b;
    else
        throw error("--source must be 'a' or 'b'");

    run_output out;
    out.as_json = json_out;
    out.reports.push_back(check_vanishing_family(src, prime, nmax));
    out.reports.push_back(check_self_similarity(src, prime, alpha, nmax));
    out.config = {{"command", "verify-aux"},
                  {"source", source},
                  {"prime", prime},
                  {"alpha", alpha},
                  {"nmax", nmax}};
    return finish_reports(out);
}

int cmd_compute(const std::string& kind, std::int64_t ell, std::int64_t t,
                std::int64_t nmax, const std::string& mode, bool json_out) {
    auto print_table = [&](const auto& table) {
        if (json_out) {
            json rows = json::array();
            for (std::int64_t n = 0; n <= nmax; ++n) {
                json row;
                row["n"] = n;
                row["count"] = table.ring.to_string(table[n]);
                rows.push_back(row);
            }
            emit_json({{"command", "compute"},
                       {"kind", kind},
                       {"ell", ell},
                       {"t", t},
                       {"nmax", nmax},
                       {"ring", table.ring.describe()}},
                      rows);
        } else {
            for (std::int64_t n = 0; n <= nmax; ++n)
                std::cout << n << " " << table.ring.to_string(table[n]) << "\n";
        }
    };

    auto build = [&](auto ring) {
        if (kind == "rd") return count_rd(ell, t, nmax, ring);
        if (kind == "regular") return count_regular(ell, nmax, ring);
        return count_distinct(t, nmax, ring);
    };

    if (mode == "exact") {
        print_table(build(exact_ring{}));
    } else {
        std::uint64_t m = 0;
        try {
            m = static_cast<std::uint64_t>(std::stoull(mode));
        } catch (...) {
            throw error("--mod must be 'exact' or an integer >= 2");
        }
        print_table(build(mod_ring(m)));
    }
    return exit_pass;
}

int cmd_enumerate(std::int64_t ell, std::int64_t t, std::int64_t n, bool json_out) {
    auto parts = enumerate_rd(ell, t, n);
    if (json_out) {
        json rows = json::array();
        for (const auto& p : parts) rows.push_back(partition_to_string(p));
        emit_json({{"command", "enumerate"}, {"ell", ell}, {"t", t}, {"n", n}},
                  rows);
    } else {
        for (const auto& p : parts) std::cout << partition_to_string(p) << "\n";
    }
    return exit_pass;
}

int cmd_scan(std::int64_t ell, std::int64_t t, std::int64_t amax,
             const std::string& mods, std::int64_t nmax, bool json_out) {
    auto m_set = parse_modulus_list(mods);
    auto hits = scan_congruences(ell, t, amax, m_set, nmax);
    if (json_out) {
        json rows = json::array();
        for (const auto& h : hits) {
            json row;
            row["step"] = h.step;
            row["offset"] = h.offset;
            row["modulus"] = h.modulus;
            rows.push_back(row);
        }
        emit_json({{"command", "scan"},
                   {"ell", ell},
                   {"t", t},
                   {"amax", amax},
                   {"mod", mods},
                   {"nmax", nmax}},
                  rows);
    } else {
        for (const auto& h : hits)
            std::cout << "RD(" << ell << "," << t << ")(" << h.step << "n+"
                      << h.offset << ") == 0 mod " << h.modulus << "\n";
    }
    return exit_pass;
}

int cmd_catalog_list(const std::string& catalog_file, bool json_out) {
    auto entries =
        catalog_file.empty() ? builtin_catalog() : load_catalog_file(catalog_file);
    if (json_out) {
        json rows = json::array();
        for (const auto& e : entries) {
            json row;
            row["id"] = e.id;
            row["depth"] = e.default_depth;
            row["params"] = e.params;
            row["identity"] = entry_to_text(e);
            rows.push_back(row);
        }
        emit_json({{"command", "catalog-list"},
                   {"catalog", catalog_file.empty() ? json(nullptr)
                                                    : json(catalog_file)}},
                  rows);
    } else {
        for (const auto& e : entries) {
            std::cout << e.id << "  depth=" << e.default_depth;
            if (!e.params.empty()) std::cout << "  [" << e.params << "]";
            std::cout << "  " << entry_to_text(e) << "\n";
        }
    }
    return exit_pass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated q-series arithmetic and partition congruence checks"};
    app.require_subcommand(1);
    app.fallthrough();

    bool json_out = false;
    int jobs = 1;
    app.add_flag("--json", json_out, "machine-readable output");
    app.add_option("--jobs", jobs, "worker threads for independent checks")
        ->check(CLI::PositiveNumber);

    // compute rd|regular|distinct
    auto* compute = app.add_subcommand("compute", "print a counting table");
    compute->require_subcommand(1);
    compute->fallthrough();
    std::int64_t ell = 4, t = 9, nmax = 100, en = 6;
    std::string mod_mode = "exact";
    for (const char* kind : {"rd", "regular", "distinct"}) {
        auto* sub = compute->add_subcommand(kind);
        sub->fallthrough();
        if (std::string(kind) != "distinct")
            sub->add_option("--ell", ell, "regularity: no part divisible by ell");
        if (std::string(kind) != "regular")
            sub->add_option("--t", t, "distinctness: multiplicities below t");
        sub->add_option("--nmax", nmax, "table covers 0..nmax")->required();
        sub->add_option("--mod", mod_mode, "'exact' or a modulus");
    }

    auto* enumerate = app.add_subcommand("enumerate", "list the partitions of n");
    enumerate->fallthrough();
    enumerate->add_option("--ell", ell)->required();
    enumerate->add_option("--t", t)->required();
    enumerate->add_option("--n", en, "weight (at most 40)")->required();

    auto* verify = app.add_subcommand("verify", "check identities or congruences");
    verify->require_subcommand(1);
    verify->fallthrough();

    auto* vid = verify->add_subcommand("identity", "catalog entries");
    vid->fallthrough();
    std::string selection;
    std::string catalog_file;
    std::optional<std::int64_t> depth_opt;
    std::string identity_mode = "fast";
    std::int64_t depth_raw = 0;
    vid->add_option("id", selection, "entry id or 'all'")->required();
    auto* depth_flag =
        vid->add_option("--depth", depth_raw, "series truncation budget");
    vid->add_option("--mod", identity_mode,
                    "'fast' (modular) or 'exact' (audit congruences in Z)");
    vid->add_option("--catalog", catalog_file, "identity file instead of builtins");

    auto* vth = verify->add_subcommand("theorem", "congruence families");
    vth->fallthrough();
    std::string theorem;
    std::optional<std::int64_t> prime_opt;
    std::int64_t prime_raw = 0, alpha = 0;
    std::optional<std::int64_t> nmax_opt;
    std::int64_t vnmax_raw = 0;
    std::string table_mode = "mod";
    vth->add_option("name", theorem, "3.1 | 4.1 | 5.1 | 6.1 | lemma1.1")->required();
    auto* prime_flag = vth->add_option("--prime", prime_raw, "prime parameter p");
    vth->add_option("--alpha", alpha, "power parameter (default 0)");
    auto* vnmax_flag = vth->add_option("--nmax", vnmax_raw, "progression indices 0..nmax");
    vth->add_option("--mod", table_mode, "'mod' (default) or 'exact' table");

    auto* vaux = verify->add_subcommand("aux", "auxiliary coefficient families");
    vaux->fallthrough();
    std::string aux_src = "a";
    std::int64_t aux_prime = 7, aux_alpha = 1, aux_nmax = 50;
    vaux->add_option("--source", aux_src, "'a' (f_1^2) or 'b' (psi psi3)");
    vaux->add_option("--prime", aux_prime)->required();
    vaux->add_option("--alpha", aux_alpha, "self-similarity power (default 1)");
    vaux->add_option("--nmax", aux_nmax, "indices 0..nmax (default 50)");

    auto* scan = app.add_subcommand("scan", "search for vanishing progressions");
    scan->fallthrough();
    std::int64_t amax = 24, scan_nmax = 200;
    std::string scan_mods = "2,3,4,6,12,24";
    scan->add_option("--ell", ell)->required();
    scan->add_option("--t", t)->required();
    scan->add_option("--amax", amax, "largest progression step");
    scan->add_option("--mod", scan_mods, "comma-separated moduli");
    scan->add_option("--nmax", scan_nmax, "evidence depth (default 200)");

    auto* catalog = app.add_subcommand("catalog", "catalog inspection");
    catalog->require_subcommand(1);
    catalog->fallthrough();
    auto* clist = catalog->add_subcommand("list", "print all entries");
    clist->fallthrough();
    clist->add_option("--catalog", catalog_file, "identity file instead of builtins");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (*depth_flag) depth_opt = depth_raw;
    if (*prime_flag) prime_opt = prime_raw;
    if (*vnmax_flag) nmax_opt = vnmax_raw;

    try {
        if (compute->parsed()) {
            const char* kind = compute->get_subcommands().front()->get_name().c_str();
            return cmd_compute(kind, ell, t, nmax, mod_mode, json_out);
        }
        if (enumerate->parsed()) return cmd_enumerate(ell, t, en, json_out);
        if (verify->parsed()) {
            if (vid->parsed()) {
                if (identity_mode != "fast" && identity_mode != "exact")
                    throw error("--mod must be 'fast' or 'exact' here");
                return cmd_verify_identity(selection, depth_opt,
                                           identity_mode == "exact", jobs,
                                           json_out, catalog_file);
            }
            if (vth->parsed()) {
                if (table_mode != "mod" && table_mode != "exact")
                    throw error("--mod must be 'mod' or 'exact' here");
                return cmd_verify_theorem(theorem, prime_opt, alpha, nmax_opt,
                                          table_mode == "exact", jobs, json_out);
            }
            if (vaux->parsed())
                return cmd_verify_aux(aux_src, aux_prime, aux_alpha, aux_nmax,
                                      json_out);
        }
        if (scan->parsed())
            return cmd_scan(ell, t, amax, scan_mods, scan_nmax, json_out);
        if (catalog->parsed()) return cmd_catalog_list(catalog_file, json_out);
    } catch (const insufficient_precision_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const qseries::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
