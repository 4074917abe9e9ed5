#include "tatespace/json_io.hpp"

#include "tatespace/duality.hpp"

namespace tatespace {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg)
{
    throw InputError(path, msg + " at '" + (path.empty() ? "/" : path) + "'");
}

std::string child(const std::string& path, const std::string& key)
{
    return path + "/" + key;
}

std::string child(const std::string& path, std::size_t i)
{
    return path + "/" + std::to_string(i);
}

const Json& member(const Json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object())
        fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end())
        fail(child(path, key), "missing member");
    return *it;
}

const Json* optional_member(const Json& j, const std::string& key)
{
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

const Json& array(const Json& j, const std::string& path)
{
    if (!j.is_array())
        fail(path, "expected an array");
    return j;
}

std::uint64_t as_uint(const Json& j, const std::string& path)
{
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        fail(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

std::int64_t as_int(const Json& j, const std::string& path)
{
    if (!j.is_number_integer())
        fail(path, "expected an integer");
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        fail(path, "integer out of range");
    return j.get<std::int64_t>();
}

std::string as_string(const Json& j, const std::string& path)
{
    if (!j.is_string())
        fail(path, "expected a string");
    return j.get<std::string>();
}

std::vector<std::size_t> size_list(const Json& j, const std::string& path)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i)
        out.push_back(as_uint(j[i], child(path, i)));
    return out;
}

FieldSpec field_of(const Json& j, const FieldSpec& fallback, const std::string& path)
{
    if (!j.is_object())
        return fallback;
    const Json* f = optional_member(j, "field");
    if (!f)
        return fallback;
    try {
        return FieldSpec(as_uint(*f, child(path, "field")));
    } catch (const PreconditionError& e) {
        fail(child(path, "field"), e.what());
    }
}

std::vector<Matrix> matrix_list(const Json& j, const FieldSpec& f, const std::string& path)
{
    std::vector<Matrix> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i)
        out.push_back(matrix_from_json(j[i], f, child(path, i)));
    return out;
}

std::vector<std::vector<Matrix>> matrix_table(const Json& j, const FieldSpec& f, const std::string& path)
{
    std::vector<std::vector<Matrix>> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i)
        out.push_back(matrix_list(j[i], f, child(path, i)));
    return out;
}

Json matrix_list_json(const std::vector<Matrix>& ms)
{
    Json out = Json::array();
    for (const Matrix& m : ms)
        out.push_back(to_json(m));
    return out;
}

Json matrix_table_json(const std::vector<std::vector<Matrix>>& t)
{
    Json out = Json::array();
    for (const auto& row : t)
        out.push_back(matrix_list_json(row));
    return out;
}

template <Direction D>
Json system_json(const System<D>& s, std::size_t depth)
{
    std::size_t levels = depth;
    if (const auto avail = s.available_levels())
        levels = *avail;
    else if (s.tail().kind == TailKind::stabilizing)
        levels = std::max(depth, s.tail().bound);
    levels = std::max<std::size_t>(levels, 1);
    const Prefix p = s.materialize(levels);
    Json out;
    out["kind"] = D == Direction::inverse ? "tower" : "indtower";
    out["field"] = s.field().p();
    out["dims"] = p.dims;
    out["transitions"] = matrix_list_json(p.transitions);
    out["tail"] = to_json(s.tail());
    return out;
}

template <Direction D>
System<D> system_from_json(const Json& j, const FieldSpec& fallback, const std::string& path)
{
    const FieldSpec f = field_of(j, fallback, path);
    Prefix p{f, size_list(member(j, "dims", path), child(path, "dims")), {}};
    if (p.dims.empty())
        fail(child(path, "dims"), "a system needs at least one level");
    p.transitions = matrix_list(member(j, "transitions", path), f, child(path, "transitions"));
    if (p.transitions.size() + 1 != p.dims.size())
        fail(child(path, "transitions"), "expected one transition between consecutive levels");
    for (std::size_t i = 0; i < p.transitions.size(); ++i) {
        const Matrix& t = p.transitions[i];
        const bool ok = D == Direction::inverse ? (t.rows() == p.dims[i] && t.cols() == p.dims[i + 1])
                                                : (t.rows() == p.dims[i + 1] && t.cols() == p.dims[i]);
        if (!ok)
            fail(child(child(path, "transitions"), i), "transition shape does not match dims");
    }
    const Json* tail = optional_member(j, "tail");
    const TailDescriptor td = tail ? tail_from_json(*tail, child(path, "tail")) : TailDescriptor::unspecified();
    try {
        System<D> s = System<D>::from_prefix(p, td);
        s.materialize(p.dims.size());
        return s;
    } catch (const DescriptorViolation& e) {
        fail(child(path, "tail"), e.what());
    }
}

template <class Piece>
Json sequence_json(const char* kind, FieldSpec f, const LazySeq<Piece>& seq, std::size_t depth)
{
    Json out;
    out["kind"] = kind;
    out["field"] = f.p();
    Json pieces = Json::array();
    for (const Piece& p : seq.prefix(depth))
        pieces.push_back(system_json(p, depth));
    out["pieces"] = std::move(pieces);
    return out;
}

AnyObject builtin_from_json(const Json& j, const FieldSpec& f, const std::string& path)
{
    const std::string name = as_string(member(j, "name", path), child(path, "name"));
    std::size_t n = 0;
    if (const Json* nj = optional_member(j, "n"))
        n = as_uint(*nj, child(path, "n"));
    BuiltinSpace b = [&] {
        try {
            return builtin_space(name, f, n);
        } catch (const PreconditionError& e) {
            fail(child(path, "name"), e.what());
        }
    }();
    return std::visit([](auto&& v) -> AnyObject { return v; }, b);
}

Json cell_json(std::size_t r, std::size_t c)
{
    return Json::array({r + 1, c + 1});
}

std::pair<std::size_t, std::size_t> cell_from_json(const Json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2)
        fail(path, "expected a [row, column] pair");
    const std::uint64_t r = as_uint(j[0], child(path, 0));
    const std::uint64_t c = as_uint(j[1], child(path, 1));
    if (r == 0 || c == 0)
        fail(path, "cell indices are 1-based");
    return {r - 1, c - 1};
}

Json pairing_json(const PairingFamily& p)
{
    Json out;
    out["kind"] = p.kind == PairingKind::product ? "product" : "coproduct";
    Json entries = Json::array();
    for (const PairingEntry& e : p.entries) {
        Json je;
        je["source"] = cell_json(e.src_r, e.src_c);
        je["target"] = cell_json(e.tgt_r, e.tgt_c);
        je["matrix"] = to_json(e.matrix);
        entries.push_back(std::move(je));
    }
    out["entries"] = std::move(entries);
    return out;
}

PairingFamily pairing_from_json(const Json& j, const FieldSpec& f, PairingKind kind, const std::string& path)
{
    PairingFamily out{kind, {}};
    if (const Json* k = optional_member(j, "kind")) {
        const std::string s = as_string(*k, child(path, "kind"));
        if (s != (kind == PairingKind::product ? "product" : "coproduct"))
            fail(child(path, "kind"), "pairing kind does not match its slot");
    }
    const std::string ep = child(path, "entries");
    const Json& entries = array(member(j, "entries", path), ep);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string p = child(ep, i);
        const auto [sr, sc] = cell_from_json(member(entries[i], "source", p), child(p, "source"));
        const auto [tr, tc] = cell_from_json(member(entries[i], "target", p), child(p, "target"));
        out.entries.push_back({sr, sc, tr, tc, matrix_from_json(member(entries[i], "matrix", p), f, child(p, "matrix"))});
    }
    return out;
}

Json size_table_json(const std::vector<std::vector<std::size_t>>& t)
{
    Json out = Json::array();
    for (const auto& row : t)
        out.push_back(row);
    return out;
}

}  // namespace

Json parse_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError("", std::string("invalid JSON: ") + e.what());
    }
}

Json to_json(const Matrix& m)
{
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["entries"] = m.entries();
    return out;
}

Matrix matrix_from_json(const Json& j, const FieldSpec& f, const std::string& path)
{
    const std::size_t rows = as_uint(member(j, "rows", path), child(path, "rows"));
    const std::size_t cols = as_uint(member(j, "cols", path), child(path, "cols"));
    const std::string ep = child(path, "entries");
    const Json& e = array(member(j, "entries", path), ep);
    if (e.size() != rows * cols)
        fail(ep, "expected " + std::to_string(rows * cols) + " entries, found " + std::to_string(e.size()));
    std::vector<std::int64_t> values;
    values.reserve(e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        values.push_back(as_int(e[i], child(ep, i)));
    return Matrix(f, rows, cols, values);
}

Json to_json(const TailDescriptor& t)
{
    Json out;
    out["kind"] = to_string(t.kind);
    out["c"] = t.bound;
    return out;
}

TailDescriptor tail_from_json(const Json& j, const std::string& path)
{
    const std::string name = as_string(member(j, "kind", path), child(path, "kind"));
    TailKind kind;
    try {
        kind = tail_kind_from_string(name);
    } catch (const Error& e) {
        fail(child(path, "kind"), e.what());
    }
    std::size_t c = 0;
    if (const Json* cj = optional_member(j, "c"))
        c = as_uint(*cj, child(path, "c"));
    return {kind, c};
}

Json to_json(const AnyObject& obj, std::size_t depth)
{
    return std::visit(
        [depth](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FinVect>) {
                Json out;
                out["kind"] = "finvect";
                out["dim"] = v.dim;
                return out;
            } else if constexpr (std::is_same_v<T, LinMap>) {
                Json out;
                out["kind"] = "linmap";
                out["field"] = v.mat.field().p();
                out["matrix"] = to_json(v.mat);
                return out;
            } else if constexpr (std::is_same_v<T, Tower> || std::is_same_v<T, IndTower>) {
                return system_json(v, depth);
            } else if constexpr (std::is_same_v<T, TateObj>) {
                Json out;
                out["kind"] = "tate";
                out["field"] = v.c_lattice.field().p();
                out["c_lattice"] = system_json(v.c_lattice, depth);
                out["d_lattice"] = system_json(v.d_lattice, depth);
                return out;
            } else if constexpr (std::is_same_v<T, IndLCObj>) {
                return sequence_json("indlc", v.field, v.summands, depth);
            } else {
                return sequence_json("prodisc", v.field, v.factors, depth);
            }
        },
        obj);
}

AnyObject object_from_json(const Json& j, const FieldSpec& fallback, const std::string& path)
{
    const FieldSpec f = field_of(j, fallback, path);
    const std::string kind = as_string(member(j, "kind", path), child(path, "kind"));
    if (kind == "finvect")
        return FinVect{as_uint(member(j, "dim", path), child(path, "dim"))};
    if (kind == "linmap")
        return LinMap(matrix_from_json(member(j, "matrix", path), f, child(path, "matrix")));
    if (kind == "tower")
        return system_from_json<Direction::inverse>(j, f, path);
    if (kind == "indtower")
        return system_from_json<Direction::direct>(j, f, path);
    if (kind == "tate")
        return TateObj{system_from_json<Direction::inverse>(member(j, "c_lattice", path), f, child(path, "c_lattice")),
                       system_from_json<Direction::direct>(member(j, "d_lattice", path), f, child(path, "d_lattice"))};
    if (kind == "indlc" || kind == "prodisc") {
        const std::string pp = child(path, "pieces");
        const Json& pieces = array(member(j, "pieces", path), pp);
        if (kind == "indlc") {
            std::vector<Tower> items;
            for (std::size_t i = 0; i < pieces.size(); ++i)
                items.push_back(system_from_json<Direction::inverse>(pieces[i], f, child(pp, i)));
            return IndLCObj{f, LazySeq<Tower>::from_vector(std::move(items))};
        }
        std::vector<IndTower> items;
        for (std::size_t i = 0; i < pieces.size(); ++i)
            items.push_back(system_from_json<Direction::direct>(pieces[i], f, child(pp, i)));
        return ProDiscObj{f, LazySeq<IndTower>::from_vector(std::move(items))};
    }
    if (kind == "builtin")
        return builtin_from_json(j, f, path);
    fail(child(path, "kind"), "unknown object kind '" + kind + "'");
}

std::string kind_name(const AnyObject& obj)
{
    static const char* names[] = {"finvect", "linmap", "tower", "indtower", "tate", "indlc", "prodisc"};
    return names[obj.index()];
}

bool is_grid_document(const Json& j)
{
    return j.is_object() && j.contains("m") && j.contains("n") && j.contains("dims");
}

Json to_json(const GridDocument& doc)
{
    const BidirectedGrid& g = doc.grid;
    Json out;
    out["field"] = g.field.p();
    out["m"] = g.m;
    out["n"] = g.n;
    out["dims"] = size_table_json(g.dims);
    out["right"] = matrix_table_json(g.right);
    out["up"] = matrix_table_json(g.up);
    if (doc.ses) {
        const SESWitness& w = *doc.ses;
        Json s;
        s["v_dims"] = w.v_dims;
        s["v_maps"] = matrix_list_json(w.v_maps);
        s["w_dims"] = w.w_dims;
        s["w_maps"] = matrix_list_json(w.w_maps);
        s["inj"] = matrix_table_json(w.inj);
        s["surj"] = matrix_table_json(w.surj);
        out["ses"] = std::move(s);
    }
    if (doc.product || doc.coproduct) {
        Json p = Json::object();
        if (doc.product)
            p["product"] = pairing_json(*doc.product);
        if (doc.coproduct)
            p["coproduct"] = pairing_json(*doc.coproduct);
        out["pairings"] = std::move(p);
    }
    if (doc.pd) {
        Json entries = Json::array();
        for (const PDEntry& e : doc.pd->entries) {
            Json je;
            je["cell"] = cell_json(e.r, e.c);
            je["dual"] = cell_json(e.dual_r, e.dual_c);
            je["f"] = to_json(e.f);
            je["g"] = to_json(e.g);
            entries.push_back(std::move(je));
        }
        out["pd"]["entries"] = std::move(entries);
        if (doc.dual_coproduct)
            out["pd"]["dual_coproduct"] = pairing_json(*doc.dual_coproduct);
    }
    return out;
}

GridDocument grid_from_json(const Json& j, const FieldSpec& fallback)
{
    const FieldSpec f = field_of(j, fallback, "");
    GridDocument doc;
    BidirectedGrid& g = doc.grid;
    g.field = f;
    g.m = as_uint(member(j, "m", ""), "/m");
    g.n = as_uint(member(j, "n", ""), "/n");
    if (g.m == 0 || g.n == 0)
        fail(g.m == 0 ? "/m" : "/n", "grid needs at least one row and one column");
    const Json& dims = array(member(j, "dims", ""), "/dims");
    if (dims.size() != g.m)
        fail("/dims", "expected m rows");
    for (std::size_t r = 0; r < g.m; ++r) {
        g.dims.push_back(size_list(dims[r], child("/dims", r)));
        if (g.dims.back().size() != g.n)
            fail(child("/dims", r), "expected n columns");
    }
    g.right = matrix_table(member(j, "right", ""), f, "/right");
    g.up = matrix_table(member(j, "up", ""), f, "/up");
    if (g.right.size() != g.m)
        fail("/right", "expected m rows of n-1 maps");
    for (std::size_t r = 0; r < g.m; ++r)
        if (g.right[r].size() != g.n - 1)
            fail(child("/right", r), "expected n-1 maps");
    if (g.up.size() != g.m - 1)
        fail("/up", "expected m-1 rows of n maps");
    for (std::size_t r = 0; r + 1 < g.m; ++r)
        if (g.up[r].size() != g.n)
            fail(child("/up", r), "expected n maps");

    if (const Json* s = optional_member(j, "ses")) {
        SESWitness w;
        w.v_dims = size_list(member(*s, "v_dims", "/ses"), "/ses/v_dims");
        w.v_maps = matrix_list(member(*s, "v_maps", "/ses"), f, "/ses/v_maps");
        w.w_dims = size_list(member(*s, "w_dims", "/ses"), "/ses/w_dims");
        w.w_maps = matrix_list(member(*s, "w_maps", "/ses"), f, "/ses/w_maps");
        w.inj = matrix_table(member(*s, "inj", "/ses"), f, "/ses/inj");
        w.surj = matrix_table(member(*s, "surj", "/ses"), f, "/ses/surj");
        doc.ses = std::move(w);
    }
    if (const Json* p = optional_member(j, "pairings")) {
        if (!p->is_object())
            fail("/pairings", "expected an object");
        if (const Json* x = optional_member(*p, "product"))
            doc.product = pairing_from_json(*x, f, PairingKind::product, "/pairings/product");
        if (const Json* x = optional_member(*p, "coproduct"))
            doc.coproduct = pairing_from_json(*x, f, PairingKind::coproduct, "/pairings/coproduct");
    }
    if (const Json* pd = optional_member(j, "pd")) {
        PDWitness w;
        const Json& entries = array(member(*pd, "entries", "/pd"), "/pd/entries");
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const std::string p = child("/pd/entries", i);
            const auto [r, c] = cell_from_json(member(entries[i], "cell", p), child(p, "cell"));
            const auto [dr, dc] = cell_from_json(member(entries[i], "dual", p), child(p, "dual"));
            w.entries.push_back({r, c, dr, dc, matrix_from_json(member(entries[i], "f", p), f, child(p, "f")),
                                 matrix_from_json(member(entries[i], "g", p), f, child(p, "g"))});
        }
        doc.pd = std::move(w);
        if (const Json* x = optional_member(*pd, "dual_coproduct"))
            doc.dual_coproduct = pairing_from_json(*x, f, PairingKind::coproduct, "/pd/dual_coproduct");
    }
    return doc;
}

Json to_json(const GridReport& rep)
{
    Json out;
    out["ok"] = rep.ok;
    Json issues = Json::array();
    for (const GridIssue& i : rep.issues) {
        Json ji;
        ji["check"] = i.check;
        ji["at"] = i.at;
        ji["detail"] = i.detail;
        if (i.residual)
            ji["residual"] = to_json(*i.residual);
        issues.push_back(std::move(ji));
    }
    out["issues"] = std::move(issues);
    return out;
}

Json to_json(const GridTruth& truth)
{
    Json out;
    out["v_dims"] = truth.v_dims;
    out["w_dims"] = truth.w_dims;
    out["scramble"] = matrix_table_json(truth.scramble);
    return out;
}

GridTruth truth_from_json(const Json& j, const FieldSpec& f)
{
    return {size_list(member(j, "v_dims", ""), "/v_dims"), size_list(member(j, "w_dims", ""), "/w_dims"),
            matrix_table(member(j, "scramble", ""), f, "/scramble")};
}

Json to_json(const RFHDecomposition& d, std::size_t m, std::size_t n)
{
    Json out;
    out["kind"] = "rfh-decomposition";
    out["v_dims"] = d.tate.d_lattice.materialize(n).dims;
    out["w_dims"] = d.tate.c_lattice.materialize(m).dims;
    out["tate"] = to_json(AnyObject(d.tate), std::max(m, n));
    Json rows = Json::array();
    for (std::size_t r = 0; r < d.pi.size(); ++r) {
        Json jr;
        jr["row"] = r + 1;
        jr["open_dim"] = d.opens[r].cols();
        jr["pi"] = to_json(d.pi[r]);
        jr["open"] = to_json(d.opens[r]);
        jr["iota"] = to_json(d.iota[r]);
        rows.push_back(std::move(jr));
    }
    out["rows"] = std::move(rows);
    return out;
}

Json to_json(const KappaCertificate& k)
{
    Json out;
    out["ok"] = k.ok;
    out["source_dim"] = k.source_dim;
    out["target_dim"] = k.target_dim;
    out["kappa"] = to_json(k.kappa);
    out["normal_form"] = to_json(k.normal_form);
    return out;
}

}  // namespace tatespace
