#include "dimtower/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "dimtower/errors.hpp"
#include "dimtower/families.hpp"
#include "dimtower/quadfield.hpp"
#include "dimtower/scan.hpp"
#include "dimtower/serialize.hpp"
#include "dimtower/tower.hpp"

namespace dimtower::cli {

namespace {

std::vector<Int> parse_int_list(const std::string &text)
{
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_int(item));
    if (out.empty())
        throw PreconditionError("empty list '" + text + "'");
    return out;
}

std::vector<int> parse_small_list(const std::string &text)
{
    std::vector<int> out;
    for (const Int &x : parse_int_list(text))
        out.push_back(static_cast<int>(to_int64(x)));
    return out;
}

std::string csv_escape(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string tower_text(const std::optional<TowerAppearance> &t)
{
    return t ? "(" + std::to_string(t->ell) + ", " + std::to_string(t->power) + ")" : "none";
}

void print_report(const WReport &w, const OutputConfig &cfg, std::ostream &out)
{
    switch (cfg.format)
    {
    case Format::Json:
        out << to_json(w).dump() << "\n";
        break;
    case Format::Csv:
        out << "p,D,r,ord_mod_p,ord_mod_pr,satisfies_W,log_valuation,tower_index\n"
            << to_string(w.p) << "," << to_string(w.D) << "," << w.r << "," << to_string(w.ord_mod_p) << ","
            << to_string(w.ord_mod_pr) << "," << (w.satisfies_W ? "true" : "false") << "," << w.log_valuation << ","
            << csv_escape(tower_text(w.tower_index)) << "\n";
        break;
    case Format::Table:
        out << "p                 " << to_string(w.p) << "\n"
            << "D                 " << to_string(w.D) << "\n"
            << "r                 " << w.r << "\n"
            << "ord_p(u_K)        " << to_string(w.ord_mod_p) << "\n"
            << "ord_p^r(u_K)      " << to_string(w.ord_mod_pr) << "\n"
            << "ord_p(u_D)        " << to_string(w.uD_ord_mod_p) << "\n"
            << "ord_p^r(u_D)      " << to_string(w.uD_ord_mod_pr) << "\n"
            << "satisfies_W       " << (w.satisfies_W ? "true" : "false") << "\n"
            << "log_valuation     " << w.log_valuation << "\n"
            << "appears_in_tower  " << tower_text(w.tower_index) << "\n";
        break;
    }
}

void print_certificates(const std::vector<FamilyCertificate> &certs, const OutputConfig &cfg, std::ostream &out)
{
    if (cfg.format != Format::Table)
    {
        for (const auto &c : certs)
            out << to_jsonl(c);
        return;
    }
    for (const auto &c : certs)
    {
        out << to_string(c.theorem) << "  d = " << to_string(c.dimension) << " = " << format_factorization(c.factorization)
            << "  D = " << to_string(c.D) << "  ell = " << c.ell << "  W at";
        for (const auto &w : c.per_prime)
            out << " " << to_string(w.p) << "(v=" << w.log_valuation << ")";
        out << "  [class group not checked]\n";
    }
}

int cmd_unit(const std::string &D_text, const OutputConfig &cfg, std::ostream &out)
{
    UnitRecord u = fundamental_unit(parse_int(D_text), default_unit_budget, cfg.factor_limit);
    switch (cfg.format)
    {
    case Format::Json:
        out << to_json(u).dump() << "\n";
        break;
    case Format::Csv:
        out << "D,u_K,norm_uK,u_D,is_squared\n"
            << to_string(u.D) << "," << format_quad(u.u_K) << "," << u.norm_uK << "," << format_quad(u.u_D) << ","
            << (u.is_squared ? "true" : "false") << "\n";
        break;
    case Format::Table:
        out << "D          " << to_string(u.D) << "\n"
            << "u_K        " << format_quad(u.u_K) << "\n"
            << "norm(u_K)  " << u.norm_uK << "\n"
            << "u_D        " << format_quad(u.u_D) << (u.is_squared ? "  (u_K^2)" : "  (u_K)") << "\n";
        break;
    }
    return exit_ok;
}

int cmd_tower(const std::string &D_text, std::uint64_t levels, bool with_factors, const OutputConfig &cfg,
              std::ostream &out)
{
    Tower tower(fundamental_unit(parse_int(D_text), default_unit_budget, cfg.factor_limit));
    std::vector<TowerEntry> entries;
    for (std::uint64_t ell = 1; ell <= levels; ++ell)
    {
        TowerEntry e{tower.D(), ell, tower.at(ell), std::nullopt};
        if (with_factors)
            e.factorization = factor(e.dim, cfg.factor_limit);
        entries.push_back(std::move(e));
    }
    switch (cfg.format)
    {
    case Format::Json: {
        Json arr = Json::array();
        for (const auto &e : entries)
            arr.push_back(to_json(e));
        out << arr.dump() << "\n";
        break;
    }
    case Format::Csv:
        out << tower_csv(entries);
        break;
    case Format::Table:
        for (const auto &e : entries)
        {
            out << std::setw(4) << e.ell << "  " << to_string(e.dim);
            if (e.factorization)
                out << "  = " << format_factorization(*e.factorization);
            out << "\n";
        }
        break;
    }
    return exit_ok;
}

int cmd_checkw(const std::string &p_text, const std::string &D_text, int r, const OutputConfig &cfg, std::ostream &out)
{
    print_report(satisfies_w(parse_int(p_text), parse_int(D_text), r, cfg.precision_R), cfg, out);
    return exit_ok;
}

int cmd_scan(const std::string &p_text, std::uint64_t dmax, int r, const OutputConfig &cfg, std::ostream &out)
{
    auto rows = scan_w(parse_int(p_text), dmax, r, cfg.parallel_jobs);
    Json arr = Json::array();
    if (cfg.format == Format::Csv)
        out << "D,satisfies_W,log_valuation,tower_index,skip_reason\n";
    for (const auto &row : rows)
    {
        bool hit = row.report && row.report->satisfies_W;
        if (!hit && row.report)
            continue;
        switch (cfg.format)
        {
        case Format::Json:
            arr.push_back(Json{{"D", to_string(row.D)},
                               {"report", row.report ? to_json(*row.report) : Json()},
                               {"skip_reason", row.skip_reason.empty() ? Json() : Json(row.skip_reason)}});
            break;
        case Format::Csv:
            if (hit)
                out << to_string(row.D) << ",true," << row.report->log_valuation << ","
                    << csv_escape(tower_text(row.report->tower_index)) << ",\n";
            else
                out << to_string(row.D) << ",,,," << csv_escape(row.skip_reason) << "\n";
            break;
        case Format::Table:
            if (hit)
                out << "D = " << to_string(row.D) << "  W holds  v_p(log u_K) = " << row.report->log_valuation
                    << "  tower " << tower_text(row.report->tower_index) << "\n";
            else
                out << "D = " << to_string(row.D) << "  skipped: " << row.skip_reason << "\n";
            break;
        }
    }
    if (cfg.format == Format::Json)
        out << arr.dump() << "\n";
    return exit_ok;
}

struct FamilyArgs
{
    std::string p, q, primes;
    int r = 2, r_max = -1, t = 0, t_max = -2;
    std::vector<std::string> exps;
    std::size_t limit = 0;
    std::string out_file;
};

int cmd_family(const std::string &which, const FamilyArgs &a, const OutputConfig &cfg, std::ostream &out,
               std::ostream &err)
{
    std::vector<FamilyCertificate> certs;
    std::vector<Int> skipped;
    Theorem theorem = parse_theorem(which);
    if (theorem == Theorem::T1)
    {
        if (a.p.empty() || a.q.empty())
            throw PreconditionError("family t1 needs --p and --q");
        bool ranged = a.r_max >= 0 || a.t_max >= -1 || a.limit > 0;
        if (!ranged)
            certs.push_back(gen_theorem1(parse_int(a.p), parse_int(a.q), a.r, a.t));
        else
        {
            T1Range range{parse_int(a.p), parse_int(a.q), a.r, std::max(a.r, a.r_max), a.t, a.t_max < -1 ? a.t : a.t_max};
            auto e = enumerate_family(range, a.limit > 0 ? a.limit : SIZE_MAX, cfg.parallel_jobs);
            certs = std::move(e.certificates);
            skipped = std::move(e.budget_exceeded);
        }
    }
    else
    {
        if (a.primes.empty() || a.exps.empty())
            throw PreconditionError("family t2 needs --primes and --exps");
        auto primes = parse_int_list(a.primes);
        if (a.exps.size() == 1 && a.limit == 0)
            certs.push_back(gen_theorem2(primes, parse_small_list(a.exps[0])));
        else
        {
            T2Schedule schedule{primes, {}};
            for (const auto &e : a.exps)
                schedule.exps.push_back(parse_small_list(e));
            // Validate every vector against the theorem up front.
            for (const auto &e : schedule.exps)
                for (int x : e)
                    if (x < int(primes.size()) + 1)
                        throw PreconditionError("family t2: exponent " + std::to_string(x) + " below n+1");
            auto e = enumerate_family(schedule, a.limit > 0 ? a.limit : SIZE_MAX, cfg.parallel_jobs);
            certs = std::move(e.certificates);
            skipped = std::move(e.budget_exceeded);
        }
    }
    for (const Int &d : skipped)
        err << "budget exceeded: dimension " << to_string(d) << " (unit search did not finish)\n";
    if (!a.out_file.empty())
    {
        std::ofstream file(a.out_file, std::ios::binary);
        if (!file)
            throw PreconditionError("cannot open '" + a.out_file + "' for writing");
        for (const auto &c : certs)
            file << to_jsonl(c);
    }
    print_certificates(certs, cfg, out);
    return exit_ok;
}

int cmd_verify(const std::string &path, std::ostream &out)
{
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw PreconditionError("cannot read '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    bool all = true;
    for (const auto &line : verify_jsonl(buffer.str()))
    {
        all = all && line.pass;
        out << "line " << line.line << ": " << (line.pass ? "PASS" : "FAIL");
        if (!line.pass)
            out << ": " << line.message;
        out << "\n";
    }
    return all ? exit_ok : exit_failure;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Dimension towers over real quadratic fields and the order condition ord_p(u_K) = ord_p^2(u_K)", "dimtower"};
    app.require_subcommand(1);
    app.fallthrough();

    OutputConfig cfg;
    std::string format = "table";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--factor-limit", cfg.factor_limit, "Trial-division bound for factorizations")
        ->check(CLI::Range(std::uint64_t(2), std::uint64_t(0xFFFFFFFF)));
    app.add_option("--precision", cfg.precision_R, "Working p-adic precision R (>= 3)")->check(CLI::Range(3, 1 << 20));
    app.add_option("--jobs", cfg.parallel_jobs, "Worker threads (DIMTOWER_JOBS overrides)")
        ->check(CLI::PositiveNumber);

    std::string D_text, p_text, file;
    std::uint64_t levels = 0, dmax = 0;
    bool with_factors = false;
    int r = 2;

    auto *unit = app.add_subcommand("unit", "Fundamental unit of Q(sqrt(D))");
    unit->add_option("D", D_text)->required();

    auto *tower = app.add_subcommand("tower", "List the dimension tower d_1..d_L over Q(sqrt(D))");
    tower->add_option("D", D_text)->required();
    tower->add_option("--levels", levels, "Number of rungs")->required();
    tower->add_flag("--factor", with_factors, "Factor each dimension");

    auto *checkw = app.add_subcommand("checkw", "Test ord_p(u_K) = ord_p^r(u_K)");
    checkw->add_option("p", p_text)->required();
    checkw->add_option("D", D_text)->required();
    checkw->add_option("--r", r, "Exponent r >= 2")->check(CLI::Range(2, 1 << 16));

    FamilyArgs fam;
    std::string which;
    auto *family = app.add_subcommand("family", "Generate certified non-p-rational families");
    family->add_option("theorem", which, "t1 (p^r q^t) or t2 (prod p_j^r_j)")->required()->check(
        CLI::IsMember({"t1", "t2", "T1", "T2"}));
    family->add_option("--p", fam.p);
    family->add_option("--q", fam.q);
    family->add_option("--r", fam.r)->check(CLI::Range(2, 1 << 16));
    family->add_option("--r-max", fam.r_max, "Enumerate r up to this value");
    family->add_option("--t", fam.t)->check(CLI::NonNegativeNumber);
    family->add_option("--t-max", fam.t_max, "Enumerate t up to this value (-1: up to the bound)");
    family->add_option("--primes", fam.primes, "Comma-separated primes for t2");
    family->add_option("--exps", fam.exps, "Comma-separated exponent vector; repeat to enumerate");
    family->add_option("--limit", fam.limit, "Enumerate at most this many certificates");
    family->add_option("--out", fam.out_file, "Also write certificates as JSON Lines to this file");

    auto *scan = app.add_subcommand("scan", "All squarefree D <= N where p satisfies the order condition");
    scan->add_option("--p", p_text)->required();
    scan->add_option("--dmax", dmax)->required();
    scan->add_option("--r", r, "Exponent r >= 2")->check(CLI::Range(2, 1 << 16));

    auto *verify = app.add_subcommand("verify", "Re-check a JSON Lines certificate file");
    verify->add_option("file", file)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty())
        rev.pop_back();
    try
    {
        app.parse(rev);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Table;
    cfg.parallel_jobs = resolve_jobs(cfg.parallel_jobs);

    try
    {
        if (*unit)
            return cmd_unit(D_text, cfg, out);
        if (*tower)
            return cmd_tower(D_text, levels, with_factors, cfg, out);
        if (*checkw)
            return cmd_checkw(p_text, D_text, r, cfg, out);
        if (*family)
            return cmd_family(which, fam, cfg, out, err);
        if (*scan)
            return cmd_scan(p_text, dmax, r, cfg, out);
        if (*verify)
            return cmd_verify(file, out);
    }
    catch (const SoundnessFailure &e)
    {
        err << "soundness failure: " << e.what() << "\n";
        return exit_failure;
    }
    catch (const InternalInconsistency &e)
    {
        err << "internal inconsistency: " << e.what() << "\n";
        return exit_failure;
    }
    catch (const BudgetExceeded &e)
    {
        err << "budget exceeded: " << e.what() << "\n";
        return exit_failure;
    }
    catch (const Error &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

int run(int argc, char **argv, std::ostream &out, std::ostream &err)
{
    std::vector<std::string> args(argv, argv + argc);
    return run(args, out, err);
}

} // namespace dimtower::cli
