#include "dimtower/serialize.hpp"

#include "dimtower/errors.hpp"

namespace dimtower {

namespace {

std::string str(const Int &x) { return to_string(x); }

Int big(const Json &j, const char *key)
{
    if (!j.contains(key))
        throw PreconditionError(std::string("missing field '") + key + "'");
    const Json &v = j.at(key);
    if (v.is_string())
        return parse_int(v.get<std::string>());
    if (v.is_number_integer())
        return Int(std::to_string(v.get<long long>()));
    throw PreconditionError(std::string("field '") + key + "' is not an integer");
}

template <typename T> T field(const Json &j, const char *key)
{
    if (!j.contains(key))
        throw PreconditionError(std::string("missing field '") + key + "'");
    try
    {
        return j.at(key).get<T>();
    }
    catch (const nlohmann::json::exception &)
    {
        throw PreconditionError(std::string("field '") + key + "' has the wrong type");
    }
}

} // namespace

Json to_json(const QuadInt &x) { return Json{{"a", str(x.a())}, {"b", str(x.b())}, {"den", x.den()}, {"D", str(x.D())}}; }

Json to_json(const UnitRecord &u)
{
    return Json{{"D", str(u.D)},
                {"u_K", to_json(u.u_K)},
                {"norm_uK", u.norm_uK},
                {"u_D", to_json(u.u_D)},
                {"is_squared", u.is_squared}};
}

Json to_json(const Factorization &f)
{
    Json out = Json::array();
    for (const auto &pp : f)
        out.push_back(Json{{"p", str(pp.prime)}, {"e", pp.exponent}});
    return out;
}

Json to_json(const TowerEntry &e)
{
    return Json{{"ell", e.ell}, {"dim", str(e.dim)}, {"factors", e.factorization ? to_json(*e.factorization) : Json()}};
}

Json to_json(const WReport &w)
{
    Json tower;
    if (w.tower_index)
        tower = Json{{"ell", w.tower_index->ell}, {"power", w.tower_index->power}};
    return Json{{"p", str(w.p)},
                {"D", str(w.D)},
                {"r", w.r},
                {"ord_mod_p", str(w.ord_mod_p)},
                {"ord_mod_pr", str(w.ord_mod_pr)},
                {"uD_ord_mod_p", str(w.uD_ord_mod_p)},
                {"uD_ord_mod_pr", str(w.uD_ord_mod_pr)},
                {"satisfies_W", w.satisfies_W},
                {"log_valuation", w.log_valuation},
                {"tower_index", tower}};
}

Json to_json(const FamilyCertificate &c)
{
    Json primes = Json::array();
    for (const Int &p : c.primes)
        primes.push_back(str(p));
    Json reports = Json::array();
    for (const auto &w : c.per_prime)
        reports.push_back(to_json(w));
    return Json{{"theorem", to_string(c.theorem)},
                {"primes", primes},
                {"exponents", c.exponents},
                {"dimension", str(c.dimension)},
                {"factorization", to_json(c.factorization)},
                {"D", str(c.D)},
                {"f", str(c.f)},
                {"ell", c.ell},
                {"per_prime", reports},
                {"class_group_checked", c.class_group_checked}};
}

Json to_json(const EquivalenceRow &row)
{
    return Json{{"p", str(row.p)},
                {"D", str(row.D)},
                {"norm_uK", row.norm_uK},
                {"order_equal", row.order_equal},
                {"log_valuation", row.log_valuation},
                {"lucas_equal", row.lucas_equal ? Json(*row.lucas_equal) : Json()}};
}

QuadInt quad_from_json(const Json &j) { return QuadInt(big(j, "a"), big(j, "b"), big(j, "D"), field<int>(j, "den")); }

Factorization factorization_from_json(const Json &j)
{
    if (!j.is_array())
        throw PreconditionError("factorization must be an array");
    Factorization f;
    for (const auto &pp : j)
        f.push_back({big(pp, "p"), field<int>(pp, "e")});
    return f;
}

WReport wreport_from_json(const Json &j)
{
    WReport w;
    w.p = big(j, "p");
    w.D = big(j, "D");
    w.r = field<int>(j, "r");
    w.ord_mod_p = big(j, "ord_mod_p");
    w.ord_mod_pr = big(j, "ord_mod_pr");
    w.uD_ord_mod_p = big(j, "uD_ord_mod_p");
    w.uD_ord_mod_pr = big(j, "uD_ord_mod_pr");
    w.satisfies_W = field<bool>(j, "satisfies_W");
    w.log_valuation = field<int>(j, "log_valuation");
    if (!j.contains("tower_index"))
        throw PreconditionError("missing field 'tower_index'");
    const Json &t = j.at("tower_index");
    if (!t.is_null())
        w.tower_index = TowerAppearance{field<std::uint64_t>(t, "ell"), field<int>(t, "power")};
    return w;
}

FamilyCertificate certificate_from_json(const Json &j)
{
    if (!j.is_object())
        throw PreconditionError("certificate must be a JSON object");
    FamilyCertificate c;
    c.theorem = parse_theorem(field<std::string>(j, "theorem"));
    for (const auto &p : field<Json>(j, "primes"))
        c.primes.push_back(p.is_string() ? parse_int(p.get<std::string>()) : throw PreconditionError("bad prime"));
    c.exponents = field<std::vector<int>>(j, "exponents");
    c.dimension = big(j, "dimension");
    c.factorization = factorization_from_json(field<Json>(j, "factorization"));
    c.D = big(j, "D");
    c.f = big(j, "f");
    c.ell = field<std::uint64_t>(j, "ell");
    for (const auto &w : field<Json>(j, "per_prime"))
        c.per_prime.push_back(wreport_from_json(w));
    c.class_group_checked = field<bool>(j, "class_group_checked");
    return c;
}

std::string to_jsonl(const FamilyCertificate &c) { return to_json(c).dump() + "\n"; }

std::string tower_csv(const std::vector<TowerEntry> &entries)
{
    std::string out = "ell,dim,factorization\n";
    for (const auto &e : entries)
    {
        out += std::to_string(e.ell) + "," + str(e.dim) + ",";
        if (e.factorization)
            out += format_factorization(*e.factorization);
        out += "\n";
    }
    return out;
}

std::vector<VerifyLine> verify_jsonl(const std::string &content)
{
    std::vector<VerifyLine> out;
    if (!content.empty() && content.back() != '\n')
    {
        out.push_back({0, false, "file does not end with a newline"});
        return out;
    }
    std::size_t start = 0, lineno = 0;
    while (start < content.size())
    {
        std::size_t end = content.find('\n', start);
        std::string line = content.substr(start, end - start);
        start = end + 1;
        ++lineno;
        VerifyLine result{lineno, false, {}};
        try
        {
            Json j = Json::parse(line);
            FamilyCertificate cert = certificate_from_json(j);
            std::string why;
            if (!verify_certificate(cert, &why))
                result.message = why;
            else if (to_jsonl(cert) != line + "\n")
                result.message = "certificate is valid but not in canonical serialized form";
            else
                result.pass = true;
        }
        catch (const nlohmann::json::exception &e)
        {
            result.message = std::string("malformed JSON: ") + e.what();
        }
        catch (const Error &e)
        {
            result.message = e.what();
        }
        out.push_back(std::move(result));
    }
    return out;
}

} // namespace dimtower
