#include <novikov/json_io.hpp>

#include <fstream>
#include <sstream>

#include <novikov/error.hpp>

namespace novikov
{

namespace
{

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        fail(where, std::string("missing field '") + key + "'");
    }
    return *it;
}

const Json& array_at(const Json& j, const std::string& where)
{
    if (!j.is_array()) {
        fail(where, "expected an array");
    }
    return j;
}

// Rationals may be given as "p/q" strings or JSON integers.
Rational rational_at(const Json& j, const std::string& where)
{
    try {
        if (j.is_string()) {
            return parse_rational(j.get<std::string>());
        }
        if (j.is_number_integer()) {
            return Rational(j.get<std::int64_t>());
        }
    } catch (const ParseError& e) {
        fail(where, e.what());
    }
    fail(where, "expected a rational as string or integer");
}

// Decimal string, "inf", or a JSON number (taken via its shortest text).
std::pair<Real, std::string> real_at(const Json& j, const std::string& where)
{
    std::string text;
    if (j.is_string()) {
        text = j.get<std::string>();
    } else if (j.is_number()) {
        text = j.dump();
    } else {
        fail(where, "expected a decimal");
    }
    try {
        return {parse_real(text), text};
    } catch (const ParseError& e) {
        fail(where, e.what());
    }
}

double double_at(const Json& j, const std::string& where)
{
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        try {
            return static_cast<double>(to_real(parse_rational(j.get<std::string>())));
        } catch (const ParseError& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected a number");
}

std::int64_t int_at(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) {
        fail(where, "expected an integer");
    }
    return j.get<std::int64_t>();
}

std::size_t size_at(const Json& j, const std::string& where)
{
    const auto v = int_at(j, where);
    if (v < 0) {
        fail(where, "expected a nonnegative integer");
    }
    return static_cast<std::size_t>(v);
}

Monomial monomial_at(const Json& j, const std::string& where)
{
    Monomial g;
    const auto& a = array_at(j, where);
    for (std::size_t i = 0; i < a.size(); ++i) {
        g.push_back(int_at(a[i], where + "/" + std::to_string(i)));
    }
    return g;
}

int degree_key(const std::string& key, const std::string& where)
{
    try {
        std::size_t used = 0;
        const int k = std::stoi(key, &used);
        if (used == key.size()) {
            return k;
        }
    } catch (const std::exception&) {
    }
    fail(where, "degree key '" + key + "' is not an integer");
}

Json monomial_json(const Monomial& g)
{
    Json a = Json::array();
    for (auto e : g) {
        a.push_back(e);
    }
    return a;
}

Json vector_json(const Eigen::VectorXd& v)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        a.push_back(v(i));
    }
    return a;
}

Json matrix_json(const Eigen::MatrixXd& m)
{
    Json a = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        a.push_back(row);
    }
    return a;
}

template <typename Wrapped>
auto relocate(const std::string& where, Wrapped&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        fail(where, e.what());
    }
}

} // namespace

Json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(source + ": byte " + std::to_string(e.byte) + ": malformed JSON");
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

WeightedLattice lattice_from_json(const Json& j, const std::string& where)
{
    const std::size_t rank = size_at(field(j, "rank", where), where + "/rank");
    std::vector<Channel> channels;
    const auto& cs = array_at(field(j, "channels", where), where + "/channels");
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::string at = where + "/channels/" + std::to_string(i);
        Channel c;
        const auto& row = array_at(field(cs[i], "row", at), at + "/row");
        for (std::size_t k = 0; k < row.size(); ++k) {
            c.row.push_back(rational_at(row[k], at + "/row/" + std::to_string(k)));
        }
        auto [value, text] = real_at(field(cs[i], "value", at), at + "/value");
        c.value = value;
        c.value_text = text;
        channels.push_back(std::move(c));
    }
    return relocate(where, [&] { return WeightedLattice(rank, std::move(channels)); });
}

Json lattice_to_json(const WeightedLattice& lattice)
{
    Json channels = Json::array();
    for (const auto& c : lattice.channels()) {
        Json row = Json::array();
        for (const auto& q : c.row) {
            row.push_back(format_rational(q));
        }
        channels.push_back(Json{{"row", row}, {"value", c.value_text.empty() ? format_real(c.value) : c.value_text}});
    }
    return Json{{"rank", lattice.rank()}, {"channels", channels}};
}

TruncatedSeries<Rational> series_from_json(const Json& j, const std::string& where)
{
    auto lattice = share(lattice_from_json(field(j, "lattice", where), where + "/lattice"));
    const Real cutoff = real_at(field(j, "cutoff", where), where + "/cutoff").first;
    std::vector<Term<Rational>> terms;
    const auto& ts = array_at(field(j, "terms", where), where + "/terms");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string at = where + "/terms/" + std::to_string(i);
        terms.push_back(Term<Rational>{rational_at(field(ts[i], "coeff", at), at + "/coeff"),
                                       monomial_at(field(ts[i], "monomial", at), at + "/monomial")});
    }
    return relocate(where, [&] { return TruncatedSeries<Rational>(lattice, std::move(terms), cutoff); });
}

Json series_to_json(const TruncatedSeries<Rational>& s)
{
    Json terms = Json::array();
    for (const auto& t : s.terms()) {
        terms.push_back(Json{{"coeff", format_rational(t.coeff)}, {"monomial", monomial_json(t.monomial)}});
    }
    return Json{{"lattice", lattice_to_json(s.lattice())}, {"cutoff", format_real(s.cutoff())}, {"terms", terms}};
}

Json grouped_to_json(const GroupedSeries<Rational>& g)
{
    Json groups = Json::array();
    for (const auto& grp : g.groups) {
        Json terms = Json::array();
        for (const auto& t : grp.kernel_terms) {
            terms.push_back(Json{{"coeff", format_rational(t.coeff)}, {"monomial", monomial_json(t.monomial)}});
        }
        groups.push_back(Json{{"image", monomial_json(grp.image)}, {"kernel_terms", terms}});
    }
    Json kernel = Json::array(), complement = Json::array();
    for (const auto& v : g.split.kernel_basis) {
        kernel.push_back(monomial_json(v));
    }
    for (const auto& v : g.split.complement_basis) {
        complement.push_back(monomial_json(v));
    }
    return Json{{"grouped", true},
                {"lattice", lattice_to_json(*g.lattice)},
                {"cutoff", format_real(g.cutoff)},
                {"kernel_basis", kernel},
                {"complement_basis", complement},
                {"groups", groups}};
}

GroupedSeries<Rational> grouped_from_json(const Json& j, const std::string& where)
{
    GroupedSeries<Rational> g;
    g.lattice = share(lattice_from_json(field(j, "lattice", where), where + "/lattice"));
    g.cutoff = real_at(field(j, "cutoff", where), where + "/cutoff").first;
    g.split = relocate(where, [&] { return kernel_and_split(*g.lattice); });
    const auto& gs = array_at(field(j, "groups", where), where + "/groups");
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const std::string at = where + "/groups/" + std::to_string(i);
        SeriesGroup<Rational> grp;
        grp.image = monomial_at(field(gs[i], "image", at), at + "/image");
        const auto& ts = array_at(field(gs[i], "kernel_terms", at), at + "/kernel_terms");
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const std::string tat = at + "/kernel_terms/" + std::to_string(k);
            grp.kernel_terms.push_back(Term<Rational>{rational_at(field(ts[k], "coeff", tat), tat + "/coeff"),
                                                      monomial_at(field(ts[k], "monomial", tat), tat + "/monomial")});
        }
        g.groups.push_back(std::move(grp));
    }
    return g;
}

LaurentPoly poly_from_json(const Json& j, std::size_t nvars, const std::string& where)
{
    std::vector<LaurentPoly::term_type> terms;
    const auto& ts = array_at(j, where);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const std::string at = where + "/" + std::to_string(i);
        Monomial g = monomial_at(field(ts[i], "monomial", at), at + "/monomial");
        if (g.size() != nvars) {
            fail(at + "/monomial", "expected " + std::to_string(nvars) + " exponents");
        }
        terms.emplace_back(std::move(g), rational_at(field(ts[i], "coeff", at), at + "/coeff"));
    }
    return relocate(where, [&] { return LaurentPoly(nvars, std::move(terms)); });
}

Json poly_to_json(const LaurentPoly& p)
{
    Json a = Json::array();
    for (const auto& [g, c] : p.terms()) {
        a.push_back(Json{{"coeff", format_rational(c)}, {"monomial", monomial_json(g)}});
    }
    return a;
}

GroupRingComplex complex_from_json(const Json& j, const std::string& where)
{
    WeightedLattice lattice = lattice_from_json(field(j, "lattice", where), where + "/lattice");
    Grading grading;
    if (const auto it = j.find("grading"); it != j.end()) {
        if (it->is_string() && it->get<std::string>() == "Z") {
        } else if (it->is_number_integer() && it->get<std::int64_t>() > 0) {
            grading.chern_number = static_cast<int>(it->get<std::int64_t>());
        } else {
            fail(where + "/grading", "expected \"Z\" or a positive minimal Chern number");
        }
    }
    std::map<int, std::size_t> ranks;
    const auto& rj = field(j, "ranks", where);
    if (!rj.is_object()) {
        fail(where + "/ranks", "expected an object");
    }
    for (const auto& [key, value] : rj.items()) {
        ranks[degree_key(key, where + "/ranks")] = size_at(value, where + "/ranks/" + key);
    }
    std::map<int, PolyMatrix> boundaries;
    if (const auto it = j.find("boundaries"); it != j.end()) {
        if (!it->is_object()) {
            fail(where + "/boundaries", "expected an object");
        }
        for (const auto& [key, value] : it->items()) {
            const std::string at = where + "/boundaries/" + key;
            const auto& rows = array_at(value, at);
            const std::size_t cols = rows.empty() ? 0 : array_at(rows[0], at + "/0").size();
            PolyMatrix m(rows.size(), cols, LaurentPoly(lattice.rank()));
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const auto& row = array_at(rows[r], at + "/" + std::to_string(r));
                if (row.size() != cols) {
                    fail(at + "/" + std::to_string(r), "ragged matrix row");
                }
                for (std::size_t c = 0; c < cols; ++c) {
                    m(r, c) = poly_from_json(row[c], lattice.rank(), at + "/" + std::to_string(r) + "/" + std::to_string(c));
                }
            }
            boundaries[degree_key(key, where + "/boundaries")] = std::move(m);
        }
    }
    std::map<int, std::vector<std::string>> labels;
    if (const auto it = j.find("labels"); it != j.end()) {
        if (!it->is_object()) {
            fail(where + "/labels", "expected an object");
        }
        for (const auto& [key, value] : it->items()) {
            const auto& names = array_at(value, where + "/labels/" + key);
            std::vector<std::string> ls;
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (!names[i].is_string()) {
                    fail(where + "/labels/" + key + "/" + std::to_string(i), "expected a string");
                }
                ls.push_back(names[i].get<std::string>());
            }
            labels[degree_key(key, where + "/labels")] = std::move(ls);
        }
    }
    return relocate(where, [&] {
        return GroupRingComplex(std::move(lattice), grading, std::move(ranks), std::move(boundaries), std::move(labels));
    });
}

Json complex_to_json(const GroupRingComplex& c)
{
    Json ranks = Json::object(), boundaries = Json::object(), labels = Json::object();
    for (const auto& [k, r] : c.ranks()) {
        ranks[std::to_string(k)] = r;
    }
    for (const auto& [k, m] : c.boundaries()) {
        Json rows = Json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            Json row = Json::array();
            for (std::size_t col = 0; col < m.cols(); ++col) {
                row.push_back(poly_to_json(m(r, col)));
            }
            rows.push_back(row);
        }
        boundaries[std::to_string(k)] = rows;
    }
    for (const auto& [k, ls] : c.labels()) {
        labels[std::to_string(k)] = ls;
    }
    Json grading = c.grading().is_integral() ? Json("Z") : Json(*c.grading().chern_number);
    return Json{{"lattice", lattice_to_json(c.lattice())},
                {"grading", grading},
                {"ranks", ranks},
                {"boundaries", boundaries},
                {"labels", labels}};
}

TorusSystem system_from_json(const Json& j, const std::string& where)
{
    TorusSystem s;
    s.n = size_at(field(j, "n", where), where + "/n");
    const auto& th = array_at(field(j, "theta", where), where + "/theta");
    for (std::size_t i = 0; i < th.size(); ++i) {
        const std::string at = where + "/theta/" + std::to_string(i);
        const std::string text = th[i].is_string() ? th[i].get<std::string>() : th[i].dump();
        try {
            const Rational q = parse_rational(text);
            s.theta.push_back(static_cast<double>(to_real(q)));
            s.theta_text.push_back(text);
        } catch (const ParseError& e) {
            fail(at, e.what());
        }
    }
    if (const auto it = j.find("hamiltonian"); it != j.end()) {
        const auto& hs = array_at(*it, where + "/hamiltonian");
        for (std::size_t i = 0; i < hs.size(); ++i) {
            const std::string at = where + "/hamiltonian/" + std::to_string(i);
            TrigTerm t;
            t.amp = double_at(field(hs[i], "amp", at), at + "/amp");
            const auto& fs = array_at(field(hs[i], "freq_space", at), at + "/freq_space");
            for (std::size_t k = 0; k < fs.size(); ++k) {
                t.freq_space.push_back(static_cast<int>(int_at(fs[k], at + "/freq_space/" + std::to_string(k))));
            }
            if (const auto ft = hs[i].find("freq_time"); ft != hs[i].end()) {
                t.freq_time = static_cast<int>(int_at(*ft, at + "/freq_time"));
            }
            if (const auto ph = hs[i].find("phase"); ph != hs[i].end()) {
                t.phase = double_at(*ph, at + "/phase");
            }
            s.hamiltonian.push_back(std::move(t));
        }
    }
    if (const auto it = j.find("steps"); it != j.end()) {
        s.steps = size_at(*it, where + "/steps");
    }
    relocate(where, [&] {
        s.check();
        return 0;
    });
    return s;
}

Json system_to_json(const TorusSystem& s)
{
    Json theta = Json::array();
    for (std::size_t i = 0; i < s.theta.size(); ++i) {
        if (!s.theta_text.empty()) {
            theta.push_back(s.theta_text[i]);
        } else {
            theta.push_back(s.theta[i]);
        }
    }
    Json ham = Json::array();
    for (const auto& t : s.hamiltonian) {
        ham.push_back(Json{{"amp", t.amp}, {"freq_space", t.freq_space}, {"freq_time", t.freq_time}, {"phase", t.phase}});
    }
    return Json{{"n", s.n}, {"theta", theta}, {"hamiltonian", ham}, {"steps", s.steps}};
}

SymplecticPath path_from_json(const Json& j, const std::string& where)
{
    const std::size_t n = size_at(field(j, "n", where), where + "/n");
    if (n == 0) {
        fail(where + "/n", "dimension must be positive");
    }
    const auto d = static_cast<Eigen::Index>(2 * n);
    const auto& ss = array_at(field(j, "samples", where), where + "/samples");
    std::vector<Eigen::MatrixXd> samples;
    for (std::size_t i = 0; i < ss.size(); ++i) {
        const std::string at = where + "/samples/" + std::to_string(i);
        const auto& entries = array_at(ss[i], at);
        if (entries.size() != static_cast<std::size_t>(d * d)) {
            fail(at, "expected " + std::to_string(d * d) + " entries");
        }
        Eigen::MatrixXd m(d, d);
        for (Eigen::Index r = 0; r < d; ++r) {
            for (Eigen::Index c = 0; c < d; ++c) {
                const auto idx = static_cast<std::size_t>(r * d + c);
                m(r, c) = double_at(entries[idx], at + "/" + std::to_string(idx));
            }
        }
        samples.push_back(std::move(m));
    }
    return relocate(where, [&] { return SymplecticPath(n, std::move(samples)); });
}

Json betti_report_to_json(const BettiReport& r)
{
    Json betti = Json::object(), ranks = Json::object(), chains = Json::object();
    for (const auto& [k, b] : r.betti) {
        betti[std::to_string(k)] = b;
    }
    for (const auto& [k, b] : r.boundary_ranks) {
        ranks[std::to_string(k)] = b;
    }
    for (const auto& [k, b] : r.chain_ranks) {
        chains[std::to_string(k)] = b;
    }
    return Json{{"field", r.field},
                {"deck_rank", r.deck_rank},
                {"chain_ranks", chains},
                {"boundary_ranks", ranks},
                {"betti", betti},
                {"sum", r.total()},
                {"euler_characteristic", r.euler_characteristic()}};
}

Json orbit_to_json(const PeriodicOrbit& o)
{
    return Json{{"base", vector_json(o.base)},
                {"displacement", o.displacement},
                {"contractible", o.contractible()},
                {"margin", o.margin},
                {"degenerate", o.degenerate},
                {"cz_index", o.cz_index ? Json(*o.cz_index) : Json("unassigned")},
                {"action", o.action ? Json(*o.action) : Json(nullptr)},
                {"residual", o.residual},
                {"monodromy", matrix_json(o.monodromy)}};
}

Json orbit_search_to_json(const OrbitSearchResult& r, const OrbitSearchOptions& opt)
{
    Json orbits = Json::array();
    for (const auto& o : r.orbits) {
        orbits.push_back(orbit_to_json(o));
    }
    return Json{{"grid", opt.grid},
                {"newton_tol", opt.newton_tol},
                {"dedupe_radius", opt.dedupe_radius},
                {"degeneracy_threshold", opt.degeneracy_threshold},
                {"seeds", r.seeds},
                {"displacement_bound", r.displacement_bound},
                {"newton_failures", r.newton_failures},
                {"orbits", orbits},
                {"log", r.log}};
}

Json verification_to_json(const VerificationReport& r)
{
    Json counts = Json::object();
    for (const auto& [k, v] : r.index_counts) {
        counts[k] = v;
    }
    Json diagnostics{{"grid", r.grid},
                     {"newton_failures", r.newton_failures},
                     {"noncontractible_orbits", r.noncontractible_orbits},
                     {"degenerate_orbits", r.degenerate_orbits},
                     {"min_margin", r.min_margin}};
    if (r.densified_grid) {
        diagnostics["densified_grid"] = *r.densified_grid;
        diagnostics["densified_count"] = *r.densified_count;
        diagnostics["count_stable"] = *r.densified_count == r.contractible_orbits;
    }
    Json orbits = Json::array();
    for (const auto& o : r.search.orbits) {
        orbits.push_back(orbit_to_json(o));
    }
    return Json{{"contractible_orbits", r.contractible_orbits},
                {"index_counts", counts},
                {"betti", betti_report_to_json(r.betti)},
                {"betti_sum", r.betti_sum},
                {"verdict", to_string(r.verdict)},
                {"diagnostics", diagnostics},
                {"orbits", orbits}};
}

} // namespace novikov
