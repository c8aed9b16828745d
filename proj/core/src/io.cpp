#include "condent/io.hpp"

#include "condent/error.hpp"

#include <cmath>
#include <cstdio>

namespace condent::io {

namespace {

void write_value(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::null: out += "null"; return;
        case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; return;
        case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); return;
        case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); return;
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (std::isnan(v)) {
                out += "null";
            } else if (std::isinf(v)) {
                out += v > 0 ? "\"inf\"" : "\"-inf\"";
            } else {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                out += buf;
            }
            return;
        }
        case Json::value_t::string: out += j.dump(); return;
        case Json::value_t::array: {
            out += '[';
            bool first = true;
            for (const Json& e : j) {
                if (!first) out += ',';
                first = false;
                write_value(e, out);
            }
            out += ']';
            return;
        }
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += Json(it.key()).dump();
                out += ':';
                write_value(it.value(), out);
            }
            out += '}';
            return;
        }
        default: out += "null"; return;
    }
}

[[noreturn]] void schema(const std::string& ptr, const std::string& what) {
    throw Error(ErrorCode::SchemaError, what, ptr.empty() ? "/" : ptr);
}

const Json& field(const Json& j, const char* key, const std::string& ptr) {
    if (!j.is_object()) schema(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema(ptr + "/" + key, std::string("missing field '") + key + "'");
    return *it;
}

double number(const Json& j, const std::string& ptr) {
    if (!j.is_number()) schema(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) schema(ptr, "expected a finite number");
    return v;
}

std::size_t index(const Json& j, const std::string& ptr) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) schema(ptr, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

const Json& array(const Json& j, const std::string& ptr) {
    if (!j.is_array()) schema(ptr, "expected an array");
    return j;
}

std::string at(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

Matrix matrix_from(const Json& j, const std::string& ptr) {
    array(j, ptr);
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        array(j[r], at(ptr, r));
        if (r == 0) cols = j[r].size();
        if (j[r].size() != cols) schema(at(ptr, r), "ragged matrix row");
    }
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const std::string p = at(at(ptr, r), c);
            const double v = number(j[r][c], p);
            if (v < 0.0) schema(p, "entries must be nonnegative");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
    }
    return m;
}

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class F>
auto rethrow_as_schema(const std::string& ptr, F f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError) throw;
        throw Error(ErrorCode::SchemaError, e.what(), ptr.empty() ? "/" : ptr);
    }
}

std::vector<double> doubles_from(const Json& j, const std::string& ptr) {
    array(j, ptr);
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], at(ptr, i)));
    return out;
}

Json named_json(const NamedSpec& s) {
    Json j{{"family", std::string(named_family_name(s.name))}};
    switch (s.name) {
        case NamedFamily::TwoParam:
            j["alpha"] = to_json(s.alpha);
            j["beta"] = s.beta;
            break;
        case NamedFamily::TanHayashi:
            j["a"] = s.a;
            j["b"] = s.b;
            break;
        default: j["alpha"] = to_json(s.alpha); break;
    }
    return j;
}

}  // namespace

std::string write(const Json& j) {
    std::string out;
    write_value(j, out);
    return out;
}

Json parse_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, source + ": " + e.what(), "/");
    }
}

Json to_json(ExtendedReal v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

ExtendedReal extended_from_json(const Json& j, const std::string& ptr) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
        schema(ptr, "expected a number or \"inf\"");
    }
    return number(j, ptr);
}

Json to_json(const JointDist& j) { return Json{{"matrix", matrix_json(j.matrix())}}; }

JointDist joint_from_json(const Json& j, const std::string& ptr) {
    if (j.is_array()) return JointDist(matrix_from(j, ptr));
    return JointDist(matrix_from(field(j, "matrix", ptr), ptr + "/matrix"));
}

Json to_json(const ProbVec& p) { return Json{{"entries", p.entries()}}; }

ProbVec probvec_from_json(const Json& j, const std::string& ptr) {
    std::vector<double> v = j.is_array() ? doubles_from(j, ptr) : doubles_from(field(j, "entries", ptr), ptr + "/entries");
    const std::string p = j.is_array() ? ptr : ptr + "/entries";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0.0) schema(at(p, i), "entries must be nonnegative");
    }
    return ProbVec(std::move(v));
}

Json to_json(const DiscreteMeasure& m) {
    Json pts = Json::array();
    for (const Atom& a : m.atoms()) pts.push_back(Json{{"alpha", to_json(a.alpha)}, {"weight", a.weight}});
    return Json{{"points", pts}};
}

DiscreteMeasure measure_from_json(const Json& j, const std::string& ptr) {
    const std::string pp = ptr + "/points";
    const Json& pts = array(field(j, "points", ptr), pp);
    std::vector<Atom> atoms;
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string p = at(pp, i);
        const double alpha = extended_from_json(field(pts[i], "alpha", p), p + "/alpha");
        const double weight = number(field(pts[i], "weight", p), p + "/weight");
        if (alpha < 0.0) schema(p + "/alpha", "order must lie in [0, inf]");
        if (weight <= 0.0) schema(p + "/weight", "weights must be positive");
        total += weight;
        atoms.push_back({alpha, weight});
    }
    if (atoms.empty()) schema(pp, "measure needs at least one point");
    if (std::abs(total - 1.0) > 1e-12) schema(pp, "weights must sum to 1 (got " + std::to_string(total) + ")");
    return rethrow_as_schema(pp, [&] { return DiscreteMeasure(atoms); });
}

Json to_json(const BulkParam& p) { return Json{{"t", p.t}, {"tau", to_json(p.tau)}}; }

BulkParam bulk_from_json(const Json& j, const std::string& ptr) {
    const double t = number(field(j, "t", ptr), ptr + "/t");
    if (t == 0.0) schema(ptr + "/t", "t must be nonzero");
    DiscreteMeasure tau = measure_from_json(field(j, "tau", ptr), ptr + "/tau");
    return BulkParam(t, std::move(tau));
}

Json to_json(const EntropyFamily& f) {
    return std::visit(
        [](const auto& v) -> Json {
            using F = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<F, FamilyBulk>) {
                return Json{{"family", "bulk"}, {"t", v.param.t}, {"tau", to_json(v.param.tau)}};
            } else if constexpr (std::is_same_v<F, FamilyZero>) {
                return Json{{"family", "zero"}, {"alpha", to_json(v.alpha)}};
            } else if constexpr (std::is_same_v<F, FamilyNegInf>) {
                return Json{{"family", "neg_inf"}, {"tau", to_json(v.tau)}};
            } else if constexpr (std::is_same_v<F, FamilyPosInfZero>) {
                return Json{{"family", "pos_inf_zero"}};
            } else if constexpr (std::is_same_v<F, FamilySigned>) {
                Json atoms = Json::array();
                for (const SignedAtom& a : v.atoms) atoms.push_back(Json{{"alpha", to_json(a.alpha)}, {"weight", a.weight}});
                return Json{{"family", "signed"}, {"t", v.t}, {"atoms", atoms}};
            } else {
                return named_json(v.spec);
            }
        },
        f);
}

EntropyFamily family_from_json(const Json& j, const std::string& ptr) {
    const Json& name_node = field(j, "family", ptr);
    if (!name_node.is_string()) schema(ptr + "/family", "expected a string");
    const std::string name = name_node.get<std::string>();
    auto alpha = [&] { return extended_from_json(field(j, "alpha", ptr), ptr + "/alpha"); };
    if (name == "bulk") return FamilyBulk{bulk_from_json(j, ptr)};
    if (name == "zero") return FamilyZero{alpha()};
    if (name == "neg_inf") return FamilyNegInf{measure_from_json(field(j, "tau", ptr), ptr + "/tau")};
    if (name == "pos_inf_zero") return FamilyPosInfZero{};
    if (name == "signed") {
        FamilySigned s{number(field(j, "t", ptr), ptr + "/t"), {}};
        const std::string ap = ptr + "/atoms";
        const Json& atoms = array(field(j, "atoms", ptr), ap);
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const std::string p = at(ap, i);
            s.atoms.push_back({extended_from_json(field(atoms[i], "alpha", p), p + "/alpha"),
                               number(field(atoms[i], "weight", p), p + "/weight")});
        }
        return s;
    }
    NamedSpec spec{};
    if (name == "hayashi") {
        spec.name = NamedFamily::Hayashi;
    } else if (name == "arimoto") {
        spec.name = NamedFamily::Arimoto;
    } else if (name == "two_param") {
        spec.name = NamedFamily::TwoParam;
        spec.beta = number(field(j, "beta", ptr), ptr + "/beta");
    } else if (name == "cachin") {
        spec.name = NamedFamily::Cachin;
    } else if (name == "renner_wolf") {
        spec.name = NamedFamily::RennerWolf;
    } else if (name == "tan_hayashi") {
        spec.name = NamedFamily::TanHayashi;
        spec.a = number(field(j, "a", ptr), ptr + "/a");
        spec.b = number(field(j, "b", ptr), ptr + "/b");
        return FamilyNamed{spec};
    } else {
        schema(ptr + "/family", "unknown family '" + name + "'");
    }
    spec.alpha = alpha();
    return FamilyNamed{spec};
}

Json to_json(const MixtureEntropy& m) {
    Json parts = Json::array();
    for (const MixtureComponent& c : m) parts.push_back(Json{{"weight", c.weight}, {"family", to_json(c.family)}});
    return Json{{"mixture", parts}};
}

MixtureEntropy mixture_from_json(const Json& j, const std::string& ptr) {
    const std::string mp = ptr + "/mixture";
    const Json& parts = array(field(j, "mixture", ptr), mp);
    MixtureEntropy m;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const std::string p = at(mp, i);
        m.push_back({number(field(parts[i], "weight", p), p + "/weight"),
                     family_from_json(field(parts[i], "family", p), p + "/family")});
    }
    return m;
}

Json to_json(const CondChannel& c) {
    Json branches = Json::array();
    for (const ChannelBranch& b : c.branches()) {
        Json s;
        if (b.s.is_dense()) {
            s = matrix_json(b.s.dense_matrix());
        } else {
            Json perms = Json::array(), weights = Json::array();
            for (const PermTerm& t : b.s.terms()) {
                perms.push_back(t.perm);
                weights.push_back(t.weight);
            }
            s = Json{{"perms", perms}, {"weights", weights}};
        }
        branches.push_back(Json{{"S", s}, {"D", matrix_json(b.d)}});
    }
    return Json{{"branches", branches}};
}

CondChannel channel_from_json(const Json& j, const std::string& ptr) {
    const std::string bp = ptr + "/branches";
    const Json& arr = array(field(j, "branches", ptr), bp);
    std::vector<ChannelBranch> branches;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = at(bp, i);
        const Json& s = field(arr[i], "S", p);
        Matrix d = matrix_from(field(arr[i], "D", p), p + "/D");
        if (s.is_array()) {
            Matrix sm = matrix_from(s, p + "/S");
            branches.push_back({DoublyStochastic::dense(std::move(sm)), std::move(d)});
        } else {
            const std::string sp = p + "/S";
            const Json& perms = array(field(s, "perms", sp), sp + "/perms");
            const std::vector<double> weights = doubles_from(field(s, "weights", sp), sp + "/weights");
            if (perms.size() != weights.size() || perms.empty()) schema(sp, "perms and weights differ in length");
            std::vector<PermTerm> terms;
            for (std::size_t k = 0; k < perms.size(); ++k) {
                const std::string pk = at(sp + "/perms", k);
                Permutation perm;
                for (std::size_t x = 0; x < array(perms[k], pk).size(); ++x) perm.push_back(index(perms[k][x], at(pk, x)));
                terms.push_back({weights[k], std::move(perm)});
            }
            const std::size_t dim = terms.front().perm.size();
            branches.push_back({DoublyStochastic::mixture(dim, std::move(terms)), std::move(d)});
        }
    }
    return CondChannel(std::move(branches));
}

Json to_json(const RationalMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RationalMatrix rational_matrix_from_json(const Json& j, const std::string& ptr) {
    array(j, ptr);
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : array(j[0], at(ptr, 0)).size();
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (array(j[r], at(ptr, r)).size() != cols) schema(at(ptr, r), "ragged matrix row");
        for (std::size_t c = 0; c < cols; ++c) {
            const std::string p = at(at(ptr, r), c);
            if (!j[r][c].is_string()) schema(p, "expected a rational string");
            m(r, c) = rethrow_as_schema(p, [&] { return rational_from_string(j[r][c].get<std::string>()); });
        }
    }
    return m;
}

Json to_json(const OracleCertificate& c) {
    Json witness = Json::array();
    for (const WitnessTerm& w : c.witness) {
        witness.push_back(Json{{"perm", w.perm}, {"y", w.y}, {"y_out", w.y_out}, {"weight", to_string(w.weight)}});
    }
    Json farkas = Json::array();
    for (const Rational& y : c.farkas) farkas.push_back(to_string(y));
    return Json{{"feasible", c.feasible}, {"d", c.d},       {"p", to_json(c.p)},         {"q", to_json(c.q)},
                {"witness", witness},     {"farkas", farkas}, {"pivots", c.pivots}};
}

OracleCertificate certificate_from_json(const Json& j, const std::string& ptr) {
    OracleCertificate c;
    const Json& feasible = field(j, "feasible", ptr);
    if (!feasible.is_boolean()) schema(ptr + "/feasible", "expected a boolean");
    c.feasible = feasible.get<bool>();
    c.d = index(field(j, "d", ptr), ptr + "/d");
    c.p = rational_matrix_from_json(field(j, "p", ptr), ptr + "/p");
    c.q = rational_matrix_from_json(field(j, "q", ptr), ptr + "/q");
    if (auto it = j.find("pivots"); it != j.end()) c.pivots = index(*it, ptr + "/pivots");
    const std::string wp = ptr + "/witness";
    const Json& w = array(field(j, "witness", ptr), wp);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string p = at(wp, i);
        WitnessTerm t;
        const std::string pp = p + "/perm";
        const Json& perm = array(field(w[i], "perm", p), pp);
        for (std::size_t x = 0; x < perm.size(); ++x) t.perm.push_back(index(perm[x], at(pp, x)));
        t.y = index(field(w[i], "y", p), p + "/y");
        t.y_out = index(field(w[i], "y_out", p), p + "/y_out");
        const Json& weight = field(w[i], "weight", p);
        if (!weight.is_string()) schema(p + "/weight", "expected a rational string");
        t.weight = rethrow_as_schema(p + "/weight", [&] { return rational_from_string(weight.get<std::string>()); });
        c.witness.push_back(std::move(t));
    }
    const std::string fp = ptr + "/farkas";
    const Json& f = array(field(j, "farkas", ptr), fp);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i].is_string()) schema(at(fp, i), "expected a rational string");
        c.farkas.push_back(rethrow_as_schema(at(fp, i), [&] { return rational_from_string(f[i].get<std::string>()); }));
    }
    return c;
}

Json to_json(const AdmissibilityReport& r) {
    return Json{{"admissible", r.admissible}, {"rule", std::string(rule_name(r.rule))}, {"integral", to_json(r.integral)}};
}

Json to_json(const Grid& g) {
    Json bulk = Json::array(), neg = Json::array();
    for (const BulkParam& p : g.bulk) bulk.push_back(to_json(p));
    for (const DiscreteMeasure& m : g.neg_inf) neg.push_back(to_json(m));
    Json zero = Json::array();
    for (double a : g.zero_alphas) zero.push_back(to_json(a));
    return Json{{"id", g.id}, {"bulk", bulk}, {"neg_inf", neg}, {"zero_alphas", zero}};
}

namespace {

Json margins_json(const std::vector<FamilyMargin>& ms) {
    Json out = Json::array();
    for (const FamilyMargin& m : ms) {
        out.push_back(Json{{"family", to_json(m.family)}, {"first", to_json(m.first)},
                           {"second", to_json(m.second)}, {"slack", to_json(m.slack)}});
    }
    return out;
}

}  // namespace

Json to_json(const LargeSampleReport& r) {
    Json j{{"verdict", std::string(verdict_name(r.verdict))},
           {"min_slack", to_json(r.min_slack)},
           {"margins", margins_json(r.margins)}};
    j["violating"] = r.violating ? to_json(*r.violating) : Json(nullptr);
    return j;
}

Json to_json(const RateEstimate& r) {
    Json j{{"value", to_json(r.value)},
           {"inconclusive", r.inconclusive},
           {"families_used", r.families_used},
           {"warnings", r.warnings}};
    j["argmin"] = r.argmin ? to_json(*r.argmin) : Json(nullptr);
    return j;
}

Json to_json(const GibbsSpec& g) { return Json{{"energies", g.energies}, {"beta", g.beta}}; }

GibbsSpec gibbs_from_json(const Json& j, const std::string& ptr) {
    GibbsSpec g;
    if (j.is_array()) {
        g.energies = doubles_from(j, ptr);
        g.beta = 1.0;
        return g;
    }
    g.energies = doubles_from(field(j, "energies", ptr), ptr + "/energies");
    g.beta = j.contains("beta") ? number(j["beta"], ptr + "/beta") : 1.0;
    return g;
}

Json to_json(const EmbedSpec& e) {
    return Json{{"g", e.g}, {"d", e.d}, {"approximated", e.approximated}, {"max_error", e.max_error}};
}

Json to_json(const SecondLawsReport& r) {
    Json j{{"verdict", std::string(verdict_name(r.verdict))},
           {"margins", margins_json(r.margins)},
           {"embedding", to_json(r.embedding)},
           {"smoothing_tv", r.smoothing_tv}};
    j["violating"] = r.violating ? to_json(*r.violating) : Json(nullptr);
    return j;
}

Json to_json(const Direction& d) {
    Json blocks = Json::array();
    for (const Block& b : d.blocks) blocks.push_back(Json{{"value", b.value}, {"dir", b.dir}, {"count", b.count}});
    return Json{{"blocks", blocks}, {"lambda_max", to_json(d.lambda_max)}};
}

Json to_json(const CurvatureSample& s) {
    return Json{{"second_derivative", to_json(s.second_derivative)},
                {"relative", to_json(s.relative)},
                {"value", to_json(s.value)},
                {"h", s.h},
                {"richardson_levels", s.richardson_levels},
                {"stable", s.stable}};
}

Json to_json(const FalsifierReport& r) {
    Json j{{"verdict", std::string(verdict_name(r.verdict))}, {"trials_run", r.trials_run}};
    if (r.violation) {
        const Violation& v = *r.violation;
        j["violation"] = Json{{"trial", v.trial},          {"kind", v.kind},   {"input", to_json(v.input)},
                              {"channel", to_json(v.channel)}, {"h_in", v.h_in}, {"h_out", v.h_out}};
    } else {
        j["violation"] = nullptr;
    }
    return j;
}

}  // namespace condent::io
