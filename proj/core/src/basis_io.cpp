#include "cforge/basis_io.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace cforge {

namespace {

using ordered_json = nlohmann::ordered_json;

BasisMapData records_of(const ConformalMap& m, const AnsatzLayout& lay) {
    auto v = lay.to_vec(m);
    if (!v) throw Error("basis member does not fit its ansatz window");
    BasisMapData records;
    for (std::size_t k = 0; k < lay.slots.size(); ++k) {
        if ((*v)[k].is_zero()) continue;
        const auto& s = lay.slots[k];
        records.push_back({lay.sig->gen(s.src).name, lay.sig->gen(s.tgt).name, s.dexp, s.xexp,
                           (*v)[k]});
    }
    return records;
}

} // namespace

BasisFileData basis_from_space(const MapSpace& space) {
    AnsatzLayout lay = AnsatzLayout::make(space.sig, space.tag.parity, space.degree_bound,
                                          space.var);
    BasisFileData data;
    data.algebra = space.algebra_name;
    data.predicate = space.tag.label;
    data.parity = std::string(parity_name(space.tag.parity));
    data.degree_bound = space.degree_bound;
    data.variable = std::string(indet_name(space.var));
    for (const auto& m : space.basis) data.maps.push_back(records_of(m, lay));
    return data;
}

BasisFileData basis_from_pair_space(const PairSpace& space) {
    AnsatzLayout lay = AnsatzLayout::make(space.sig, space.tag.parity, space.degree_bound,
                                          space.var);
    BasisFileData data;
    data.algebra = space.algebra_name;
    data.predicate = space.tag.label;
    data.parity = std::string(parity_name(space.tag.parity));
    data.degree_bound = space.degree_bound;
    data.variable = std::string(indet_name(space.var));
    data.is_pair_space = true;
    for (const auto& [phi, tau] : space.basis)
        data.pairs.push_back({records_of(phi, lay), records_of(tau, lay)});
    return data;
}

namespace {

ordered_json record_json(const BasisRecord& r) {
    ordered_json j;
    j["source"] = r.source;
    j["target"] = r.target;
    j["d_exp"] = r.d_exp;
    j["x_exp"] = r.x_exp;
    j["coeff"] = r.coeff.str();
    return j;
}

ordered_json records_json(const BasisMapData& records) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : records) arr.push_back(record_json(r));
    return arr;
}

BasisRecord record_of_json(const ordered_json& j) {
    BasisRecord r;
    r.source = j.at("source").get<std::string>();
    r.target = j.at("target").get<std::string>();
    r.d_exp = j.at("d_exp").get<unsigned>();
    r.x_exp = j.at("x_exp").get<unsigned>();
    r.coeff = Rational::parse(j.at("coeff").get<std::string>());
    return r;
}

BasisMapData records_of_json(const ordered_json& arr) {
    BasisMapData records;
    for (const auto& j : arr) records.push_back(record_of_json(j));
    return records;
}

} // namespace

std::string serialize_basis(const BasisFileData& data) {
    ordered_json j;
    j["schema_version"] = data.schema_version;
    j["algebra"] = data.algebra;
    j["predicate"] = data.predicate;
    j["parity"] = data.parity;
    j["degree_bound"] = data.degree_bound;
    j["variable"] = data.variable;
    if (data.is_pair_space) {
        ordered_json pairs = ordered_json::array();
        for (const auto& [phi, tau] : data.pairs) {
            ordered_json p;
            p["phi"] = records_json(phi);
            p["tau"] = records_json(tau);
            pairs.push_back(std::move(p));
        }
        j["pairs"] = std::move(pairs);
    } else {
        ordered_json maps = ordered_json::array();
        for (const auto& m : data.maps) maps.push_back(records_json(m));
        j["maps"] = std::move(maps);
    }
    return j.dump(2) + "\n";
}

BasisFileData parse_basis(std::string_view json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error(std::string("malformed basis file: ") + e.what());
    }
    try {
        BasisFileData data;
        data.schema_version = j.at("schema_version").get<int>();
        if (data.schema_version != 1) throw Error("unsupported basis schema version");
        data.algebra = j.at("algebra").get<std::string>();
        data.predicate = j.at("predicate").get<std::string>();
        data.parity = j.at("parity").get<std::string>();
        if (!parity_of_name(data.parity)) throw Error("bad parity in basis file");
        data.degree_bound = j.at("degree_bound").get<unsigned>();
        data.variable = j.at("variable").get<std::string>();
        if (j.contains("pairs")) {
            data.is_pair_space = true;
            for (const auto& p : j.at("pairs"))
                data.pairs.push_back(
                    {records_of_json(p.at("phi")), records_of_json(p.at("tau"))});
        } else {
            for (const auto& m : j.at("maps")) data.maps.push_back(records_of_json(m));
        }
        return data;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(std::string("malformed basis file: ") + e.what());
    }
}

namespace {

// which = 0 for maps / phi components, 1 for tau components.
using Key = std::tuple<int, std::string, std::string, unsigned, unsigned>;

std::vector<Key> union_keys(const BasisFileData& a, const BasisFileData& b) {
    std::set<Key> keys;
    auto feed = [&](const BasisFileData& f) {
        for (const auto& m : f.maps)
            for (const auto& r : m) keys.insert({0, r.source, r.target, r.d_exp, r.x_exp});
        for (const auto& [phi, tau] : f.pairs) {
            for (const auto& r : phi) keys.insert({0, r.source, r.target, r.d_exp, r.x_exp});
            for (const auto& r : tau) keys.insert({1, r.source, r.target, r.d_exp, r.x_exp});
        }
    };
    feed(a);
    feed(b);
    return {keys.begin(), keys.end()};
}

std::vector<DenseVec> file_vectors(const BasisFileData& f, const std::vector<Key>& keys) {
    std::map<Key, std::size_t> index;
    for (std::size_t k = 0; k < keys.size(); ++k) index[keys[k]] = k;
    std::vector<DenseVec> out;
    auto vec_of = [&](const BasisMapData& phi, const BasisMapData* tau) {
        DenseVec v(keys.size(), Rational(0));
        for (const auto& r : phi) v[index.at({0, r.source, r.target, r.d_exp, r.x_exp})] = r.coeff;
        if (tau)
            for (const auto& r : *tau)
                v[index.at({1, r.source, r.target, r.d_exp, r.x_exp})] = r.coeff;
        return v;
    };
    for (const auto& m : f.maps) out.push_back(vec_of(m, nullptr));
    for (const auto& [phi, tau] : f.pairs) out.push_back(vec_of(phi, &tau));
    return out;
}

BasisMapData records_of_key_vec(const DenseVec& v, const std::vector<Key>& keys) {
    BasisMapData records;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        if (v[k].is_zero()) continue;
        const auto& [which, src, tgt, dexp, xexp] = keys[k];
        records.push_back({src, tgt, dexp, xexp, v[k]});
    }
    return records;
}

} // namespace

bool basis_compatible(const BasisFileData& a, const BasisFileData& b, std::string* why) {
    auto complain = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (a.algebra != b.algebra) return complain("different algebras");
    if (a.degree_bound != b.degree_bound) return complain("different degree bounds");
    if (a.parity != b.parity) return complain("different parities");
    if (a.variable != b.variable) return complain("different map variables");
    if (a.is_pair_space != b.is_pair_space) return complain("pair space vs map space");
    return true;
}

bool basis_equal_span(const BasisFileData& a, const BasisFileData& b) {
    std::string why;
    if (!basis_compatible(a, b, &why)) throw SpaceMismatch(why);
    auto keys = union_keys(a, b);
    return span_equal(file_vectors(a, keys), file_vectors(b, keys), keys.size());
}

BasisFileData basis_intersect(const BasisFileData& a, const BasisFileData& b) {
    std::string why;
    if (!basis_compatible(a, b, &why)) throw SpaceMismatch(why);
    if (a.is_pair_space) throw SpaceMismatch("intersect expects map spaces, not pair spaces");
    auto keys = union_keys(a, b);
    auto inter = span_intersect(file_vectors(a, keys), file_vectors(b, keys), keys.size());
    BasisFileData out;
    out.algebra = a.algebra;
    out.predicate = "intersect(" + a.predicate + "," + b.predicate + ")";
    out.parity = a.parity;
    out.degree_bound = a.degree_bound;
    out.variable = a.variable;
    for (const auto& v : inter) out.maps.push_back(records_of_key_vec(v, keys));
    return out;
}

namespace {

// Reconstruct abstract conformal maps over a synthetic signature made of
// the generator names appearing in the files (parities of generators do
// not enter the gc bracket; the space parity does).
struct AbstractSpace {
    SigPtr sig;
    std::vector<ConformalMap> maps;
};

AbstractSpace reconstruct(const BasisFileData& f, const std::vector<std::string>& gen_names,
                          Indet var) {
    std::vector<Generator> gens;
    for (const auto& name : gen_names) gens.push_back({name, Parity::even});
    auto sig = std::make_shared<Signature>(std::move(gens));
    auto p = parity_of_name(f.parity);
    AbstractSpace out{sig, {}};
    for (const auto& m : f.maps) {
        std::vector<Element> images(sig->rank(), zero_element(sig->rank()));
        for (const auto& r : m) {
            std::size_t src = *sig->index_of(r.source), tgt = *sig->index_of(r.target);
            Monomial mono{};
            mono[size_t(Indet::d)] = uint16_t(r.d_exp);
            mono[size_t(var)] = uint16_t(r.x_exp);
            images[src].coords[tgt] += Poly::monomial(r.coeff, mono);
        }
        out.maps.push_back(ConformalMap{sig, *p, var, std::move(images)});
    }
    return out;
}

} // namespace

BasisFileData basis_centralizer(const BasisFileData& a, const BasisFileData& b) {
    if (a.algebra != b.algebra) throw SpaceMismatch("different algebras");
    if (a.variable != b.variable) throw SpaceMismatch("different map variables");
    if (a.is_pair_space || b.is_pair_space)
        throw SpaceMismatch("centralizer expects map spaces, not pair spaces");
    auto var = indet_of_name(a.variable);
    if (!var || *var == Indet::d) throw Error("bad map variable in basis file");

    std::set<std::string> names;
    for (const BasisFileData* f : {&a, &b})
        for (const auto& m : f->maps)
            for (const auto& r : m) {
                names.insert(r.source);
                names.insert(r.target);
            }
    BasisFileData out;
    out.algebra = a.algebra;
    out.predicate = "centralizer(" + a.predicate + "," + b.predicate + ")";
    out.parity = a.parity;
    out.degree_bound = a.degree_bound;
    out.variable = a.variable;
    if (a.maps.empty() || b.maps.empty() || names.empty()) {
        out.maps = a.maps;
        return out;
    }
    std::vector<std::string> gen_names(names.begin(), names.end());
    AbstractSpace sa = reconstruct(a, gen_names, *var);
    AbstractSpace sb = reconstruct(b, gen_names, *var);
    Indet yv = *var == Indet::y ? Indet::n : Indet::y;

    std::map<std::tuple<std::size_t, std::size_t, Monomial>, std::map<std::size_t, Rational>> rows;
    for (std::size_t i = 0; i < sa.maps.size(); ++i) {
        for (std::size_t j = 0; j < sb.maps.size(); ++j) {
            ConformalMap br = gc_bracket(sa.maps[i], sb.maps[j], *var, yv);
            for (std::size_t g = 0; g < br.images.size(); ++g)
                for (std::size_t tg = 0; tg < br.images[g].coords.size(); ++tg)
                    for (const auto& term : br.images[g].coords[tg].terms())
                        rows[{j * sa.sig->rank() + g, tg, term.mono}][i] += term.coeff;
        }
    }
    LinSystem sys(sa.maps.size());
    for (const auto& [key, cols] : rows) {
        SparseRow row;
        for (const auto& [u, c] : cols)
            if (!c.is_zero()) row.push_back({u, c});
        sys.add_row(std::move(row));
    }
    auto keys = union_keys(a, a);
    auto avecs = file_vectors(a, keys);
    std::vector<DenseVec> members;
    for (const auto& combo : sys.solve_nullspace()) {
        DenseVec v(keys.size(), Rational(0));
        for (std::size_t i = 0; i < avecs.size(); ++i)
            for (std::size_t c = 0; c < keys.size(); ++c) v[c] += combo[i] * avecs[i][c];
        members.push_back(std::move(v));
    }
    for (const auto& v : rref_canonicalize(members, keys.size()))
        out.maps.push_back(records_of_key_vec(v, keys));
    return out;
}

} // namespace cforge
