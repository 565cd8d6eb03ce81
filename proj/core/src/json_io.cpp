#include "flagstab/json_io.hpp"

#include <utility>
#include <vector>

namespace flagstab {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw input_error("expected an object with a '" + std::string(key) + "' key");
    auto it = j.find(key);
    if (it == j.end()) throw input_error("missing key '" + std::string(key) + "'");
    return *it;
}

long long_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw input_error("key '" + std::string(key) + "' must be an integer");
    return v.get<long>();
}

std::size_t size_field(const Json& j, const char* key) {
    long v = long_field(j, key);
    if (v < 0) throw input_error("key '" + std::string(key) + "' must be nonnegative");
    return static_cast<std::size_t>(v);
}

bool bool_field(const Json& j, const char* key, bool fallback) {
    if (!j.is_object()) throw input_error("expected an object");
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_boolean()) throw input_error("key '" + std::string(key) + "' must be a boolean");
    return it->get<bool>();
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) throw input_error("key '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

const Json& array_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_array()) throw input_error("key '" + std::string(key) + "' must be an array");
    return v;
}

// The split-sign convention; stamped into every serialized ambient.
const char* kConvention =
    "signed basis -n<...<-1<1<...<n; <e_i,e_-i> = 1 for i > 0, and -1 for i < 0 when symplectic";

}  // namespace

Json rational_to_json(const Rational& value) { return rational_to_string(value); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw input_error("rationals serialize as \"p/q\" strings");
    return parse_rational(j.get<std::string>());
}

Json vec_to_json(const Vec& v) {
    Json out = Json::array();
    for (const Rational& x : v) out.push_back(rational_to_json(x));
    return out;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw input_error("vectors serialize as arrays");
    Vec out;
    out.reserve(j.size());
    for (const Json& x : j) out.push_back(rational_from_json(x));
    return out;
}

Json matrix_to_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vec_to_json(m.row(i)));
    return out;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw input_error("matrices serialize as nonempty row arrays");
    std::vector<Vec> rows;
    rows.reserve(j.size());
    for (const Json& r : j) rows.push_back(vec_from_json(r));
    for (const Vec& r : rows)
        if (r.size() != rows.front().size()) throw input_error("matrix rows have unequal lengths");
    if (rows.front().empty()) throw input_error("matrix rows must be nonempty");
    return Matrix::from_rows(rows);
}

Json subspace_to_json(const Subspace& s) {
    Json out = Json::object();
    out["ambient_dim"] = s.ambient_dim();
    Json basis = Json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) basis.push_back(vec_to_json(s.basis_row(i)));
    out["basis"] = basis;
    return out;
}

Subspace subspace_from_json(const Json& j) {
    std::size_t dim = size_field(j, "ambient_dim");
    const Json& basis = array_field(j, "basis");
    std::vector<Vec> rows;
    rows.reserve(basis.size());
    for (const Json& r : basis) {
        Vec v = vec_from_json(r);
        if (v.size() != dim) throw input_error("basis row length does not match ambient_dim");
        rows.push_back(std::move(v));
    }
    if (rows.empty()) return Subspace::span(std::vector<Vec>{}, dim);
    return Subspace::from_rref(Matrix::from_rows(rows), dim);
}

Json pairing_to_json(const Pairing& p) {
    Json out = Json::object();
    out["kind"] = pairing_kind_name(p.kind());
    if (p.kind() == PairingKind::explicit_gram) {
        out["gram"] = matrix_to_json(p.gram());
    } else {
        out["dim"] = p.left_dim();
    }
    return out;
}

Pairing pairing_from_json(const Json& j) {
    std::string kind = string_field(j, "kind");
    if (kind == pairing_kind_name(PairingKind::explicit_gram) || kind == "explicit")
        return Pairing::explicit_gram(matrix_from_json(field(j, "gram")));
    std::size_t dim = size_field(j, "dim");
    if (kind == pairing_kind_name(PairingKind::standard_dual)) return Pairing::standard_dual(dim);
    if (kind == pairing_kind_name(PairingKind::split_symmetric))
        return Pairing::split_symmetric(dim);
    if (kind == pairing_kind_name(PairingKind::split_symplectic))
        return Pairing::split_symplectic(dim);
    throw input_error("unknown pairing kind '" + kind + "'");
}

Json flag_to_json(const GeneralizedFlag& f) {
    Json out = Json::object();
    out["ambient_dim"] = f.ambient_dim();
    Json pairs = Json::array();
    for (const FlagPair& p : f.pairs()) {
        Json jp = Json::object();
        jp["pred"] = subspace_to_json(p.pred);
        jp["succ"] = subspace_to_json(p.succ);
        if (p.inf_marker) jp["inf_marker"] = true;
        pairs.push_back(std::move(jp));
    }
    out["pairs"] = pairs;
    return out;
}

GeneralizedFlag flag_from_json(const Json& j) {
    std::size_t dim = size_field(j, "ambient_dim");
    const Json& pairs = array_field(j, "pairs");
    std::vector<FlagPair> out;
    out.reserve(pairs.size());
    for (const Json& p : pairs) {
        FlagPair fp;
        fp.pred = subspace_from_json(field(p, "pred"));
        fp.succ = subspace_from_json(field(p, "succ"));
        fp.inf_marker = bool_field(p, "inf_marker", false);
        if (fp.pred.ambient_dim() != dim || fp.succ.ambient_dim() != dim)
            throw input_error("flag pair ambient_dim does not match the flag");
        out.push_back(std::move(fp));
    }
    return GeneralizedFlag(std::move(out), dim);
}

Json ambient_to_json(const Ambient& a) {
    Json out = Json::object();
    out["kind"] = ambient_kind_name(a.kind());
    out["convention"] = kConvention;
    switch (a.kind()) {
        case AmbientKind::gl:
        case AmbientKind::sl:
            out["n"] = a.n();
            break;
        case AmbientKind::so:
        case AmbientKind::sp:
            out["form"] = pairing_to_json(a.form());
            break;
        case AmbientKind::extension: {
            out["base"] = ambient_to_json(*a.base());
            Json extra = Json::array();
            for (const Matrix& m : a.extra()) extra.push_back(matrix_to_json(m));
            out["extra"] = extra;
            break;
        }
    }
    return out;
}

Ambient ambient_from_json(const Json& j) {
    std::string kind = string_field(j, "kind");
    if (kind == ambient_kind_name(AmbientKind::gl))
        return make_ambient(AmbientKind::gl, size_field(j, "n"));
    if (kind == ambient_kind_name(AmbientKind::sl))
        return make_ambient(AmbientKind::sl, size_field(j, "n"));
    if (kind == ambient_kind_name(AmbientKind::so) || kind == ambient_kind_name(AmbientKind::sp)) {
        AmbientKind k = kind == ambient_kind_name(AmbientKind::so) ? AmbientKind::so
                                                                   : AmbientKind::sp;
        if (j.contains("form")) return make_ambient(k, pairing_from_json(field(j, "form")));
        std::size_t n = size_field(j, "n");
        return make_ambient(k, k == AmbientKind::so ? Pairing::split_symmetric(n)
                                                    : Pairing::split_symplectic(n));
    }
    if (kind == ambient_kind_name(AmbientKind::extension)) {
        Ambient base = ambient_from_json(field(j, "base"));
        std::vector<Matrix> extra;
        for (const Json& m : array_field(j, "extra")) extra.push_back(matrix_from_json(m));
        return extend_ambient(base, std::move(extra));
    }
    throw input_error("unknown ambient kind '" + kind + "'");
}

Json subalgebra_to_json(const LieSubalgebra& g) {
    Json out = Json::object();
    out["ambient"] = ambient_to_json(g.ambient());
    Json basis = Json::array();
    for (const Matrix& m : g.basis_matrices()) basis.push_back(matrix_to_json(m));
    out["basis"] = basis;
    return out;
}

LieSubalgebra subalgebra_from_json(const Json& j) {
    Ambient ambient = ambient_from_json(field(j, "ambient"));
    const Json& basis = array_field(j, "basis");
    std::size_t n = ambient.n();
    std::vector<Vec> rows;
    rows.reserve(basis.size());
    for (const Json& jm : basis) {
        Matrix m = matrix_from_json(jm);
        if (m.rows() != n || m.cols() != n)
            throw input_error("subalgebra basis matrix is not " + std::to_string(n) + "x" +
                              std::to_string(n));
        rows.push_back(flatten(m));
    }
    Subspace space = rows.empty() ? Subspace::span(std::vector<Vec>{}, n * n)
                                  : Subspace::from_rref(Matrix::from_rows(rows), n * n);
    return LieSubalgebra(std::move(ambient), std::move(space));
}

Json index_set_to_json(const IndexSet& s) {
    Json out = Json::object();
    out["domain"] = domain_kind_name(s.domain());
    Json singles = Json::array();
    for (long i : s.singles()) singles.push_back(i);
    out["singles"] = singles;
    if (s.down()) out["down"] = *s.down();
    if (s.up()) out["up"] = *s.up();
    return out;
}

namespace {

DomainKind domain_from_json(const Json& j, const char* key) {
    std::string name = string_field(j, key);
    if (name == domain_kind_name(DomainKind::positive)) return DomainKind::positive;
    if (name == domain_kind_name(DomainKind::signed_indices)) return DomainKind::signed_indices;
    throw input_error("unknown index domain '" + name + "'");
}

}  // namespace

IndexSet index_set_from_json(const Json& j) {
    DomainKind domain = domain_from_json(j, "domain");
    std::vector<long> singles;
    for (const Json& v : array_field(j, "singles")) {
        if (!v.is_number_integer()) throw input_error("index set singles must be integers");
        singles.push_back(v.get<long>());
    }
    std::vector<Ray> rays;
    if (j.contains("down")) rays.push_back({RayDir::down, long_field(j, "down")});
    if (j.contains("up")) rays.push_back({RayDir::up, long_field(j, "up")});
    return IndexSet(domain, std::move(rays), std::move(singles));
}

Json vec_template_to_json(const VecTemplate& t) {
    Json out = Json::array();
    for (const auto& [index, coeff] : t) out.push_back(Json::array({index, rational_to_json(coeff)}));
    return out;
}

VecTemplate vec_template_from_json(const Json& j) {
    if (!j.is_array()) throw input_error("vector templates serialize as [index, coeff] arrays");
    VecTemplate out;
    for (const Json& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer())
            throw input_error("vector template entries are [index, coeff] pairs");
        out[entry[0].get<long>()] += rational_from_json(entry[1]);
    }
    return out;
}

namespace {

Json ray_to_json(const Ray& r) {
    Json out = Json::object();
    out["dir"] = r.dir == RayDir::up ? "up" : "down";
    out["start"] = r.start;
    return out;
}

Ray ray_from_json(const Json& j) {
    std::string dir = string_field(j, "dir");
    if (dir != "up" && dir != "down") throw input_error("ray dir must be 'up' or 'down'");
    return Ray{dir == "up" ? RayDir::up : RayDir::down, long_field(j, "start")};
}

}  // namespace

Json descriptor_to_json(const LimitsDescriptor& d) {
    Json out = Json::object();
    if (const auto* stable = std::get_if<StableSubspace>(&d)) {
        out["type"] = "stable";
        out["index_part"] = index_set_to_json(stable->index_part());
        Json extra = Json::array();
        for (const VecTemplate& t : stable->extra()) extra.push_back(vec_template_to_json(t));
        out["extra"] = extra;
        return out;
    }
    const SeqSubspace& seq = std::get<SeqSubspace>(d);
    out["type"] = "seq";
    out["domain"] = domain_kind_name(seq.domain);
    Json gens = Json::array();
    for (const VecTemplate& t : seq.explicit_gens) gens.push_back(vec_template_to_json(t));
    out["explicit"] = gens;
    Json families = Json::array();
    for (const TemplateFamily& f : seq.families) {
        Json jf = Json::object();
        jf["param"] = ray_to_json(f.param);
        Json terms = Json::array();
        for (const auto& [offset, coeff] : f.terms)
            terms.push_back(Json::array({offset, rational_to_json(coeff)}));
        jf["terms"] = terms;
        families.push_back(std::move(jf));
    }
    out["families"] = families;
    return out;
}

LimitsDescriptor descriptor_from_json(const Json& j) {
    std::string type = string_field(j, "type");
    if (type == "stable") {
        IndexSet index_part = index_set_from_json(field(j, "index_part"));
        std::vector<VecTemplate> extra;
        for (const Json& t : array_field(j, "extra")) extra.push_back(vec_template_from_json(t));
        return StableSubspace(std::move(index_part), std::move(extra));
    }
    if (type != "seq") throw input_error("descriptor type must be 'stable' or 'seq'");
    SeqSubspace seq;
    seq.domain = domain_from_json(j, "domain");
    for (const Json& t : array_field(j, "explicit"))
        seq.explicit_gens.push_back(vec_template_from_json(t));
    for (const Json& jf : array_field(j, "families")) {
        TemplateFamily f;
        f.param = ray_from_json(field(jf, "param"));
        for (const Json& term : array_field(jf, "terms")) {
            if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer())
                throw input_error("family terms are [offset, coeff] pairs");
            f.terms.emplace_back(term[0].get<long>(), rational_from_json(term[1]));
        }
        seq.families.push_back(std::move(f));
    }
    return seq;
}

Json certificate_to_json(const Certificate& c) {
    Json out = Json::object();
    out["level"] = c.level;
    out["lookahead"] = c.lookahead;
    out["stable"] = c.stable;
    return out;
}

Certificate certificate_from_json(const Json& j) {
    Certificate c;
    c.level = long_field(j, "level");
    c.lookahead = long_field(j, "lookahead");
    c.stable = bool_field(j, "stable", false);
    if (!j.contains("stable")) throw input_error("missing key 'stable'");
    return c;
}

Json verify_report_to_json(const VerifyReport& r) {
    Json out = Json::object();
    out["scenario"] = r.scenario;
    out["check"] = r.check;
    out["lookahead"] = r.lookahead;
    Json levels = Json::array();
    for (const LevelOutcome& o : r.levels) {
        Json jo = Json::object();
        jo["level"] = o.level;
        jo["pass"] = o.pass;
        jo["detail"] = o.detail;
        if (o.certificate) jo["certificate"] = certificate_to_json(*o.certificate);
        levels.push_back(std::move(jo));
    }
    out["levels"] = levels;
    out["all_pass"] = r.all_pass();
    return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw input_error(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace flagstab
