#include "hasse/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "CLI11.hpp"

#include "hasse/cohomology.hpp"
#include "hasse/elliptic.hpp"
#include "hasse/error.hpp"
#include "hasse/matgroup.hpp"
#include "hasse/padic_curve.hpp"

namespace hasse::cli {

using nlohmann::json;

namespace {

constexpr int kPointDigits = 40;
constexpr std::uint32_t kMaxBound = 10000;

std::string timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* fixed = std::getenv("SOURCE_DATE_EPOCH")) t = std::strtoll(fixed, nullptr, 10);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json make_report(const std::string& command, const json& params, const std::string& extra_input,
                 json results, json summary) {
    return {{"schema", kSchema},
            {"command", command},
            {"tool_version", kToolVersion},
            {"timestamp", timestamp()},
            {"input_digest", sha256_hex(command + "\n" + params.dump() + "\n" + extra_input)},
            {"parameters", params},
            {"results", std::move(results)},
            {"summary", std::move(summary)}};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

void require_p(std::uint32_t p) {
    if (p != 3 && p != 5) throw Unsupported("p must be 3 or 5, got " + std::to_string(p));
}

// Canonical order, duplicates removed. "all" expands to the five modules.
std::vector<coh::ModuleKind> parse_modules(const std::vector<std::string>& names) {
    std::set<coh::ModuleKind> kinds;
    for (const auto& entry : names)
        for (const auto& name : split(entry, ',')) {
            if (name == "all") {
                for (auto k : coh::all_module_kinds()) kinds.insert(k);
            } else {
                kinds.insert(coh::parse_module_kind(name));
            }
        }
    return {kinds.begin(), kinds.end()};
}

std::vector<std::string> module_names(const std::vector<coh::ModuleKind>& kinds) {
    std::vector<std::string> out;
    for (auto k : kinds) out.push_back(coh::to_string(k));
    return out;
}

json gens_json(const grp::MatGroup& g) {
    json gens = json::array();
    for (const auto& s : g.generators()) gens.push_back(grp::to_string(s));
    return gens;
}

grp::MatGroup group_from_gens(std::uint32_t p, const std::vector<std::string>& gens) {
    std::vector<grp::Mat2> mats;
    for (const auto& g : gens) mats.push_back(grp::parse_mat2(g, p));
    return grp::close_subgroup(p, mats);
}

bool less_group(const grp::MatGroup& a, const grp::MatGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.codes() < b.codes();
}

std::vector<grp::MatGroup> scope_groups(std::uint32_t p, const std::string& scope,
                                        std::uint64_t seed) {
    std::vector<grp::MatGroup> groups;
    auto append = [&](std::vector<grp::MatGroup> more) {
        for (auto& g : more) groups.push_back(std::move(g));
    };
    const auto tokens = split(scope, ',');
    if (tokens.empty()) throw ParseError("empty scope");
    for (const auto& token : tokens) {
        if (token == "all") {
            if (p != 3) throw Unsupported("scope 'all' is only available for p = 3");
            append(grp::enumerate_all_subgroups(p));
        } else if (token == "families") {
            append(grp::enumerate_subgroups(grp::borel(p)));
            append(grp::enumerate_subgroups(grp::nonsplit_torus(p)));
            groups.push_back(grp::split_torus(p));
            groups.push_back(grp::special_linear(p));
            groups.push_back(grp::general_linear(p));
        } else if (token.rfind("random:", 0) == 0) {
            const std::string count = token.substr(7);
            std::size_t used = 0;
            long k = -1;
            try {
                k = std::stol(count, &used);
            } catch (const std::logic_error&) {
            }
            if (k < 0 || k > 100000 || used != count.size())
                throw ParseError("bad random scope '" + token + "'");
            std::mt19937_64 rng(seed);
            for (long i = 0; i < k; ++i) {
                const std::vector<grp::Mat2> gens{grp::random_gl2(p, rng), grp::random_gl2(p, rng)};
                groups.push_back(grp::close_subgroup(p, gens));
            }
        } else {
            throw ParseError("unknown scope '" + token + "' (expected all, families, random:k)");
        }
    }
    std::sort(groups.begin(), groups.end(), less_group);
    groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
    return groups;
}

json sha_row(const grp::MatGroup& g, coh::ModuleKind kind) {
    const auto m = coh::build_module(kind, g);
    const auto s = coh::sha1(m);
    return {{"group", {{"order", g.order()}, {"gens", gens_json(g)}}},
            {"module", coh::to_string(kind)},
            {"h1", s.h1_dim},
            {"sha", s.sha_dim}};
}

json verdict_json(const ell::PrimeVerdict& v) {
    return {{"p", v.p},
            {"reduction", ell::to_string(v.reduction)},
            {"ap", v.ap ? json(*v.ap) : json()},
            {"eliminated", v.eliminated},
            {"reason", ell::to_string(v.reason)}};
}

std::string dichotomy_name(grp::Dichotomy::Kind k) {
    switch (k) {
        case grp::Dichotomy::Kind::BorelConjugate: return "borel-conjugate";
        case grp::Dichotomy::Kind::ContainsSL2: return "contains-SL2";
        case grp::Dichotomy::Kind::Inconsistent: return "inconsistent";
    }
    return "?";
}

bool witness_conjugates_into_borel(const grp::MatGroup& g, const grp::Mat2& c) {
    const auto p = g.p();
    const auto ci = grp::inverse(c, p);
    return std::all_of(g.elements().begin(), g.elements().end(), [&](const grp::Mat2& x) {
        return grp::is_upper_triangular(grp::mul(grp::mul(c, x, p), ci, p));
    });
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

// ---------------------------------------------------------------------------

Outcome sha_scan(const ShaScanOptions& o) {
    require_p(o.p);
    const auto kinds = o.modules.empty() ? coh::all_module_kinds() : parse_modules(o.modules);
    const auto groups = scope_groups(o.p, o.scope, o.seed);

    const long items = static_cast<long>(groups.size() * kinds.size());
    std::vector<json> rows(static_cast<std::size_t>(items));
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < items; ++i) {
        const auto& g = groups[static_cast<std::size_t>(i) / kinds.size()];
        rows[static_cast<std::size_t>(i)] = sha_row(g, kinds[static_cast<std::size_t>(i) % kinds.size()]);
    }
    std::size_t nonzero = 0, h1_nonzero = 0;
    for (const auto& r : rows) {
        if (r["sha"].get<std::size_t>() != 0) ++nonzero;
        if (r["h1"].get<std::size_t>() != 0) ++h1_nonzero;
    }
    const json params = {{"p", o.p}, {"modules", module_names(kinds)}, {"scope", o.scope},
                         {"seed", o.seed}};
    const json summary = {{"groups", groups.size()},
                          {"rows", rows.size()},
                          {"rows_with_nonzero_h1", h1_nonzero},
                          {"rows_with_nonzero_sha", nonzero}};
    Outcome out{make_report("sha-scan", params, "", json(rows), summary)};
    out.exit_code = nonzero == 0 ? kExitPass : kExitCheckFailed;
    return out;
}

Outcome serre_check(const SerreOptions& o) {
    require_p(o.p);
    const auto kinds = o.modules ? parse_modules(*o.modules) : coh::all_module_kinds();
    json rows = json::array();
    bool all_injective = true;
    for (auto k : kinds) {
        const auto r = coh::serre_restriction_check(o.p, k);
        all_injective = all_injective && r.injective;
        rows.push_back({{"module", coh::to_string(k)},
                        {"h1_sl2", r.h1_sl2},
                        {"h1_borel", r.h1_borel},
                        {"h1_sylow", r.h1_sylow},
                        {"injective", r.injective},
                        {"sylow_injective", r.sylow_injective}});
    }
    const json params = {{"p", o.p}, {"modules", module_names(kinds)}};
    Outcome out{make_report("serre-check", params, "", rows,
                            {{"modules", rows.size()}, {"all_injective", all_injective}})};
    out.exit_code = all_injective ? kExitPass : kExitCheckFailed;
    return out;
}

Outcome classify(const GroupOptions& o) {
    fp::check_modulus(o.p);
    const auto g = group_from_gens(o.p, o.gens);
    const auto d = grp::classify_dichotomy(g);
    bool ok = d.kind != grp::Dichotomy::Kind::Inconsistent;
    json result = {{"group", {{"order", g.order()}, {"gens", gens_json(g)}}},
                   {"kind", dichotomy_name(d.kind)},
                   {"contains_sl2", d.contains_sl2},
                   {"witness", d.witness ? json(grp::to_string(*d.witness)) : json()}};
    if (d.witness) {
        const bool conj = witness_conjugates_into_borel(g, *d.witness);
        result["witness_verified"] = conj;
        ok = ok && conj;
    }
    const json params = {{"p", o.p}, {"gens", o.gens}};
    Outcome out{make_report("classify", params, "", result, {{"consistent", ok}})};
    out.exit_code = ok ? kExitPass : kExitCheckFailed;
    return out;
}

Outcome cohomology(const GroupOptions& o) {
    fp::check_modulus(o.p);
    const auto g = group_from_gens(o.p, o.gens);
    const auto kinds = o.modules.empty() ? coh::all_module_kinds() : parse_modules(o.modules);
    json rows = json::array();
    std::size_t nonzero = 0;
    for (auto k : kinds) {
        json row = sha_row(g, k);
        const auto m = coh::build_module(k, g);
        row["h0"] = coh::h0(*m).size();
        row["h2"] = g.order() <= coh::kH2MaxOrder ? json(coh::h2_small(m).dim) : json();
        if (row["sha"].get<std::size_t>() != 0) ++nonzero;
        rows.push_back(std::move(row));
    }
    const json params = {{"p", o.p}, {"gens", o.gens}, {"modules", module_names(kinds)}};
    Outcome out{make_report("cohomology", params, "", rows,
                            {{"rows", rows.size()}, {"rows_with_nonzero_sha", nonzero}})};
    out.exit_code = nonzero == 0 ? kExitPass : kExitCheckFailed;
    return out;
}

Outcome prime_scan(const PrimeScanOptions& o) {
    if (o.bound < 3 || o.bound > kMaxBound)
        throw HypothesisNotMet("bound must lie in [3, " + std::to_string(kMaxBound) + "]");
    if (o.degree < 1) throw HypothesisNotMet("degree must be >= 1");
    const std::string text = read_file(o.curves_path);
    const auto curves = ell::parse_curves(text);

    json results = json::array();
    std::map<std::string, std::size_t> reasons;
    bool hasse_ok = true;
    bool consistent = true;
    for (const auto& c : curves) {
        json verdicts = json::array();
        for (const auto& v : ell::elimination_scan(c, o.bound, o.degree)) {
            ++reasons[ell::to_string(v.reason)];
            if (v.ap) {
                const double a = static_cast<double>(*v.ap);
                if (a * a > 4.0 * v.p) hasse_ok = false;
            }
            if (v.eliminated && v.reduction != ell::Reduction::GoodOrdinary) consistent = false;
            verdicts.push_back(verdict_json(v));
        }
        const auto two = ell::prime_verdict(c, 2, o.degree);
        results.push_back({{"label", c.label},
                           {"a", {c.a1, c.a2, c.a3, c.a4, c.a6}},
                           {"discriminant", c.disc.get_str()},
                           {"cm", ell::has_cm(c)},
                           {"verdicts", verdicts},
                           {"excluded", json::array({verdict_json(two)})}});
    }
    json metadata = {
        {"threshold_rule", "eliminate good-ordinary p when p - 1 > max(2, degree)"},
        {"threshold_discrepancy",
         "the elimination bound appears both as 'closure degree >= p - 1' and as "
         "'p > closure degree'; the scan applies the stricter p - 1 > max(2, degree)"},
        {"model_caveat", "bad reduction is read off the discriminant of the given model"},
        {"unchecked_assumptions",
         o.degree > 1 ? json::array({"p does not divide the discriminant of the base field"})
                      : json::array()}};
    const json params = {{"curves", o.curves_path}, {"bound", o.bound}, {"degree", o.degree}};
    json summary = {{"curves", curves.size()},
                    {"reasons", reasons},
                    {"hasse_bound_ok", hasse_ok},
                    {"consistent", consistent}};
    Outcome out{make_report("prime-scan", params, text, results, summary)};
    out.report["metadata"] = metadata;
    out.exit_code = hasse_ok && consistent ? kExitPass : kExitCheckFailed;
    return out;
}

Outcome approximate(const ApproximateOptions& o) {
    const std::string text = read_file(o.curves_path);
    const auto curves = ell::parse_curves(text);
    const auto& c = ell::find_curve(curves, o.label);
    if (o.p == 2 || !fp::is_prime(o.p)) throw NotPrime("p must be an odd prime");
    if (o.depth_max < 1) throw HypothesisNotMet("depth-max must be >= 1");
    switch (ell::reduction_type(c, o.p)) {
        case ell::Reduction::Bad:
            throw BadReduction("curve " + c.label + " has bad reduction at " + std::to_string(o.p));
        case ell::Reduction::GoodSupersingular:
            throw SupersingularInput("curve " + c.label + " is supersingular at " +
                                     std::to_string(o.p));
        case ell::Reduction::GoodOrdinary: break;
    }
    std::mt19937_64 rng(o.seed);
    const int count = o.pair ? 2 : 1;
    std::vector<padic::PointQp> points;
    for (int i = 0; i < count; ++i) points.push_back(padic::random_point(c, o.p, rng, kPointDigits));

    padic::ApproximationPolicy policy;
    policy.depth_max = o.depth_max;
    json certs = json::array();
    bool all = true;
    for (const auto& pt : points) {
        try {
            const auto cert = padic::approximate_point(c, pt, policy);
            all = all && cert.verified;
            certs.push_back(padic::to_json(cert));
        } catch (const PolicyExhausted& e) {
            all = false;
            certs.push_back({{"label", c.label},
                             {"p", o.p},
                             {"verified", false},
                             {"error", e.what()},
                             {"P1", padic::to_json(pt)}});
        }
    }
    const json params = {{"curves", o.curves_path}, {"label", o.label}, {"p", o.p},
                         {"seed", o.seed},          {"depth_max", o.depth_max}, {"pair", o.pair}};
    Outcome out{make_report("approximate", params, text, {{"certificates", certs}},
                            {{"certificates", certs.size()}, {"all_verified", all}})};
    out.exit_code = all ? kExitPass : kExitCheckFailed;
    return out;
}

// ---------------------------------------------------------------------------

Outcome verify(const json& report) {
    if (!report.is_object() || report.value("schema", 0) != kSchema)
        throw ParseError("not a schema-1 report");
    const std::string command = report.at("command").get<std::string>();
    const json& params = report.at("parameters");
    const json& results = report.at("results");
    json mismatches = json::array();
    std::size_t checked = 0;
    auto mismatch = [&](const std::string& what) { mismatches.push_back(what); };

    if (command == "sha-scan" || command == "cohomology") {
        const auto p = params.at("p").get<std::uint32_t>();
        require_p(p);
        for (const auto& row : results) {
            const auto g = group_from_gens(p, row.at("group").at("gens").get<std::vector<std::string>>());
            const auto kind = coh::parse_module_kind(row.at("module").get<std::string>());
            const json fresh = sha_row(g, kind);
            ++checked;
            if (g.order() != row.at("group").at("order").get<std::size_t>() ||
                fresh["h1"] != row.at("h1") || fresh["sha"] != row.at("sha"))
                mismatch("row order " + std::to_string(g.order()) + " module " + coh::to_string(kind));
        }
    } else if (command == "serre-check") {
        const auto p = params.at("p").get<std::uint32_t>();
        require_p(p);
        for (const auto& row : results) {
            const auto kind = coh::parse_module_kind(row.at("module").get<std::string>());
            const auto r = coh::serre_restriction_check(p, kind);
            ++checked;
            if (r.h1_sl2 != row.at("h1_sl2").get<std::size_t>() ||
                r.h1_borel != row.at("h1_borel").get<std::size_t>() ||
                r.injective != row.at("injective").get<bool>())
                mismatch("serre row " + coh::to_string(kind));
        }
    } else if (command == "prime-scan") {
        const int degree = params.at("degree").get<int>();
        for (const auto& entry : results) {
            const auto a = entry.at("a").get<std::vector<long long>>();
            if (a.size() != 5) throw ParseError("curve needs five coefficients");
            const auto c = ell::make_curve(entry.at("label").get<std::string>(), a[0], a[1], a[2], a[3], a[4]);
            for (const auto& v : entry.at("verdicts")) {
                const auto fresh = verdict_json(ell::prime_verdict(c, v.at("p").get<std::uint32_t>(), degree));
                ++checked;
                if (fresh != v) mismatch(c.label + " at p = " + v.at("p").dump());
            }
        }
    } else if (command == "approximate") {
        for (const auto& cert : results.at("certificates")) {
            ++checked;
            const auto r = padic::verify_certificate(cert);
            if (!r.ok) {
                std::string why = cert.value("label", std::string("?")) + ":";
                for (const auto& f : r.failures) why += " " + f + ";";
                mismatch(why);
            }
        }
    } else if (command == "classify") {
        const auto p = params.at("p").get<std::uint32_t>();
        const auto g = group_from_gens(p, results.at("group").at("gens").get<std::vector<std::string>>());
        const auto d = grp::classify_dichotomy(g);
        ++checked;
        if (dichotomy_name(d.kind) != results.at("kind").get<std::string>()) mismatch("dichotomy kind");
        if (d.witness && !witness_conjugates_into_borel(g, *d.witness)) mismatch("witness");
    } else {
        throw ParseError("cannot verify reports of command '" + command + "'");
    }

    const json params_out = {{"command", command}, {"input_digest", report.value("input_digest", "")}};
    Outcome out{make_report("verify", params_out, "", {{"mismatches", mismatches}},
                            {{"checked", checked}, {"mismatches", mismatches.size()}})};
    out.exit_code = mismatches.empty() ? kExitPass : kExitCheckFailed;
    return out;
}

// ---------------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Desk-scale verifier for finite cohomology, reduction data and p-adic approximation"};
    app.require_subcommand(1);
    std::string out_path;

    ShaScanOptions sha;
    std::string sha_modules;
    auto* sha_cmd = app.add_subcommand("sha-scan", "H^1 and Sha^1 over a family of subgroups of GL2(F_p)");
    sha_cmd->add_option("--p", sha.p, "prime (3 or 5)");
    sha_cmd->add_option("--modules", sha_modules, "comma-separated: trivial,V,sym2,ad,VxV (default all)");
    sha_cmd->add_option("--scope", sha.scope, "all | families | random:k, comma-combinable");
    sha_cmd->add_option("--seed", sha.seed, "seed for random scopes");
    sha_cmd->add_option("--out", out_path, "write the JSON report here");

    SerreOptions serre;
    std::string serre_modules;
    auto* serre_cmd = app.add_subcommand("serre-check", "restriction from SL2(F_p) to its Borel");
    serre_cmd->add_option("--p", serre.p, "prime (3 or 5)");
    auto* serre_mod_opt = serre_cmd->add_option("--modules", serre_modules, "comma-separated module list");
    serre_cmd->add_option("--out", out_path, "write the JSON report here");

    GroupOptions group;
    std::string group_modules;
    auto* classify_cmd = app.add_subcommand("classify", "Borel / SL2 dichotomy for a generated subgroup");
    classify_cmd->add_option("--p", group.p, "prime");
    classify_cmd->add_option("--gens", group.gens, "generator a,b,c,d (repeatable)")->required();
    classify_cmd->add_option("--out", out_path, "write the JSON report here");
    auto* coh_cmd = app.add_subcommand("cohomology", "H^0, H^1, Sha^1 (and H^2 when small) of a generated subgroup");
    coh_cmd->add_option("--p", group.p, "prime");
    coh_cmd->add_option("--gens", group.gens, "generator a,b,c,d (repeatable)")->required();
    coh_cmd->add_option("--modules", group_modules, "comma-separated module list");
    coh_cmd->add_option("--out", out_path, "write the JSON report here");

    PrimeScanOptions scan;
    auto* scan_cmd = app.add_subcommand("prime-scan", "per-prime reduction verdicts for a curve file");
    scan_cmd->add_option("--curves", scan.curves_path, "CSV: label,a1,a2,a3,a4,a6")->required();
    scan_cmd->add_option("--bound", scan.bound, "largest prime scanned (<= 10000)");
    scan_cmd->add_option("--degree", scan.degree, "Galois closure degree bound (default 1)");
    scan_cmd->add_option("--out", out_path, "write the JSON report here");

    ApproximateOptions approx;
    auto* approx_cmd = app.add_subcommand("approximate", "certificate for P = (x, y') with x rational near P1");
    approx_cmd->add_option("--curves", approx.curves_path, "CSV: label,a1,a2,a3,a4,a6")->required();
    approx_cmd->add_option("--label", approx.label, "curve label")->required();
    approx_cmd->add_option("--p", approx.p, "good ordinary odd prime");
    approx_cmd->add_option("--seed", approx.seed, "seed for the random point P1");
    approx_cmd->add_option("--depth-max", approx.depth_max, "largest congruence depth tried");
    approx_cmd->add_flag("--pair", approx.pair, "certify two independent points");
    approx_cmd->add_option("--out", out_path, "write the JSON report here");

    std::string verify_path;
    auto* verify_cmd = app.add_subcommand("verify", "re-run every row and certificate of a report");
    verify_cmd->add_option("report", verify_path, "report JSON file")->required();
    verify_cmd->add_option("--out", out_path, "write the JSON report here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        Outcome result;
        if (*sha_cmd) {
            if (!sha_modules.empty()) sha.modules = {sha_modules};
            result = sha_scan(sha);
        } else if (*serre_cmd) {
            if (serre_mod_opt->count() > 0) serre.modules = split(serre_modules, ',');
            result = serre_check(serre);
        } else if (*classify_cmd) {
            result = classify(group);
        } else if (*coh_cmd) {
            if (!group_modules.empty()) group.modules = {group_modules};
            result = cohomology(group);
        } else if (*scan_cmd) {
            result = prime_scan(scan);
        } else if (*approx_cmd) {
            result = approximate(approx);
        } else {
            json report;
            try {
                report = json::parse(read_file(verify_path));
            } catch (const json::parse_error& e) {
                throw ParseError(std::string("report is not JSON: ") + e.what());
            }
            result = verify(report);
        }
        const std::string text = result.report.dump(2) + "\n";
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw ParseError("cannot write " + out_path);
            f << text;
            out << result.report.at("command").get<std::string>() << ": "
                << result.report.at("summary").dump() << " -> " << out_path << "\n";
        }
        return result.exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "error: malformed report: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace hasse::cli
