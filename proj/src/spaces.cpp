#include "tatespace/spaces.hpp"

#include "tatespace/linalg.hpp"

namespace tatespace {

std::string to_string(TailKind kind)
{
    switch (kind) {
    case TailKind::stabilizing:
        return "stabilizing";
    case TailKind::bounded_ker:
        return "bounded-ker";
    case TailKind::bounded_coker:
        return "bounded-coker";
    case TailKind::unbounded:
        return "unbounded";
    case TailKind::unspecified:
        return "unspecified";
    }
    return "unspecified";
}

TailKind tail_kind_from_string(const std::string& s)
{
    for (auto k : {TailKind::stabilizing, TailKind::bounded_ker, TailKind::bounded_coker, TailKind::unbounded,
                   TailKind::unspecified})
        if (to_string(k) == s)
            return k;
    throw PreconditionError("unknown tail descriptor kind '" + s + "'");
}

TailDescriptor dual_tail(const TailDescriptor& t)
{
    switch (t.kind) {
    case TailKind::bounded_ker:
        return TailDescriptor::bounded_coker(t.bound);
    case TailKind::bounded_coker:
        return TailDescriptor::bounded_ker(t.bound);
    default:
        return t;
    }
}

template <Direction D>
void System<D>::check_level(const Impl& impl, std::size_t i, const Level& lv) const
{
    if (!(lv.link.field() == impl.field))
        throw FieldMismatch("level " + std::to_string(i + 1) + " is over a different field");
    const std::size_t prev = i == 0 ? 0 : impl.memo[i - 1].dim;
    const bool inverse = D == Direction::inverse;
    const std::size_t want_rows = inverse ? prev : lv.dim;
    const std::size_t want_cols = inverse ? lv.dim : prev;
    if (lv.link.rows() != want_rows || lv.link.cols() != want_cols)
        throw ShapeError("level " + std::to_string(i + 1) + ": transition is " + std::to_string(lv.link.rows()) +
                         "x" + std::to_string(lv.link.cols()) + ", expected " + std::to_string(want_rows) + "x" +
                         std::to_string(want_cols));
    if (i == 0)
        return;
    const TailDescriptor& t = impl.tail;
    switch (t.kind) {
    case TailKind::bounded_ker: {
        const std::size_t k = kernel_dim(lv.link);
        if (k > t.bound)
            throw DescriptorViolation("transition " + std::to_string(i) + "->" + std::to_string(i + 1) +
                                      " has kernel of dim " + std::to_string(k) + " > declared bound " +
                                      std::to_string(t.bound));
        break;
    }
    case TailKind::bounded_coker: {
        const std::size_t k = cokernel_dim(lv.link);
        if (k > t.bound)
            throw DescriptorViolation("transition " + std::to_string(i) + "->" + std::to_string(i + 1) +
                                      " has cokernel of dim " + std::to_string(k) + " > declared bound " +
                                      std::to_string(t.bound));
        break;
    }
    case TailKind::stabilizing:
        if (i >= t.bound && !is_invertible(lv.link))
            throw DescriptorViolation("transition " + std::to_string(i) + "->" + std::to_string(i + 1) +
                                      " is not an isomorphism although the tail stabilizes from level " +
                                      std::to_string(t.bound));
        break;
    default:
        break;
    }
}

namespace {

Matrix empty_link(FieldSpec f, Direction d, std::size_t dim)
{
    return d == Direction::inverse ? Matrix(f, 0, dim) : Matrix(f, dim, 0);
}

/// [I | 0] : k^(n+1) -> k^n
Matrix drop_last(FieldSpec f, std::size_t n)
{
    Matrix m(f, n, n + 1);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

}  // namespace

template <Direction D>
System<D> System<D>::from_prefix(const Prefix& prefix, TailDescriptor tail)
{
    const std::size_t n = prefix.dims.size();
    if (n == 0)
        throw PreconditionError("a presented system needs at least one level");
    if (prefix.transitions.size() != n - 1)
        throw ShapeError("presented system has " + std::to_string(n) + " levels but " +
                         std::to_string(prefix.transitions.size()) + " transitions");
    std::optional<std::size_t> available = n;
    if (tail.kind == TailKind::stabilizing) {
        if (tail.bound == 0 || tail.bound > n)
            tail.bound = n;
        available.reset();
    }
    auto data = std::make_shared<const Prefix>(prefix);
    const FieldSpec f = prefix.field;
    return System(
        f,
        [data, f, n](std::size_t i) -> Level {
            if (i == 0)
                return {data->dims[0], empty_link(f, D, data->dims[0])};
            if (i < n)
                return {data->dims[i], data->transitions[i - 1]};
            return {data->dims.back(), Matrix::identity(f, data->dims.back())};
        },
        tail, available);
}

template <Direction D>
System<D> System<D>::constant(FieldSpec field, std::size_t dim)
{
    return System(
        field,
        [field, dim](std::size_t i) -> Level {
            return {dim, i == 0 ? empty_link(field, D, dim) : Matrix::identity(field, dim)};
        },
        TailDescriptor::stabilizing(1));
}

template class System<Direction::inverse>;
template class System<Direction::direct>;

TwoLayerPrefix materialize(const IndLCObj& obj, std::size_t depth, std::size_t inner_depth)
{
    if (depth == 0 || inner_depth == 0)
        throw PreconditionError("materialize: depth must be >= 1");
    TwoLayerPrefix out;
    for (const auto& t : obj.summands.prefix(depth))
        out.pieces.push_back(t.materialize(inner_depth));
    return out;
}

TwoLayerPrefix materialize(const ProDiscObj& obj, std::size_t depth, std::size_t inner_depth)
{
    if (depth == 0 || inner_depth == 0)
        throw PreconditionError("materialize: depth must be >= 1");
    TwoLayerPrefix out;
    for (const auto& t : obj.factors.prefix(depth))
        out.pieces.push_back(t.materialize(inner_depth));
    return out;
}

TatePrefix materialize(const TateObj& obj, std::size_t depth)
{
    return {obj.c_lattice.materialize(depth), obj.d_lattice.materialize(depth)};
}

Tower power_series(FieldSpec field)
{
    return Tower(
        field,
        [field](std::size_t i) -> Level {
            if (i == 0)
                return {1, Matrix(field, 0, 1)};
            return {i + 1, drop_last(field, i)};
        },
        TailDescriptor::bounded_ker(1));
}

IndTower polynomial(FieldSpec field)
{
    return IndTower(
        field,
        [field](std::size_t i) -> Level {
            if (i == 0)
                return {1, Matrix(field, 1, 0)};
            return {i + 1, drop_last(field, i).transpose()};
        },
        TailDescriptor::bounded_coker(1));
}

IndTower negative_powers(FieldSpec field)
{
    // same matrices as polynomial(): the basis t^-1, ..., t^-n grows at the end
    return polynomial(field);
}

TateObj laurent(FieldSpec field)
{
    return {power_series(field), negative_powers(field)};
}

TateObj finite_tate(FieldSpec field, std::size_t dim)
{
    return {Tower::constant(field, dim), IndTower::zero(field)};
}

BuiltinSpace builtin_space(const std::string& name, FieldSpec field, std::size_t n)
{
    if (name == "power_series")
        return power_series(field);
    if (name == "laurent")
        return laurent(field);
    if (name == "polynomial")
        return polynomial(field);
    if (name == "constant")
        return FinVect{n};
    throw PreconditionError("unknown builtin space '" + name + "'");
}

NormalizedIndTower normalize_indtower(const IndTower& t, std::size_t depth)
{
    const Prefix p = t.materialize(depth);
    const FieldSpec f = p.field;
    const std::size_t n = p.dims.size();
    std::vector<Matrix> to_top(n, Matrix(f, 0, 0));
    to_top[n - 1] = Matrix::identity(f, p.dims[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;)
        to_top[i] = to_top[i + 1] * p.transitions[i];

    NormalizedIndTower out{IndTower::zero(f), {}, {}};
    Prefix np{f, {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
        out.embedding.push_back(i + 1 == n ? to_top[i] : image_basis(to_top[i]));
        np.dims.push_back(out.embedding[i].cols());
        out.comparison.push_back(coordinates(out.embedding[i], to_top[i]));
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        np.transitions.push_back(coordinates(out.embedding[i + 1], out.embedding[i]));
    out.system = IndTower::from_prefix(np, TailDescriptor::unspecified());
    return out;
}

NormalizedTower normalize_tower(const Tower& t, std::size_t depth)
{
    const Prefix p = t.materialize(depth);
    const FieldSpec f = p.field;
    const std::size_t n = p.dims.size();
    std::vector<Matrix> from_bottom(n, Matrix(f, 0, 0));
    from_bottom[n - 1] = Matrix::identity(f, p.dims[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;)
        from_bottom[i] = p.transitions[i] * from_bottom[i + 1];

    NormalizedTower out{Tower::zero(f), {}};
    Prefix np{f, {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
        out.comparison.push_back(i + 1 == n ? from_bottom[i] : image_basis(from_bottom[i]));
        np.dims.push_back(out.comparison[i].cols());
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        np.transitions.push_back(coordinates(out.comparison[i], p.transitions[i] * out.comparison[i + 1]));
    out.system = Tower::from_prefix(np, TailDescriptor::unspecified());
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::tate:
        return "tate";
    case Verdict::not_tate:
        return "not-tate";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

namespace {

std::string profile_text(const std::vector<std::size_t>& profile)
{
    std::string s = "[";
    for (std::size_t i = 0; i < profile.size(); ++i)
        s += (i ? "," : "") + std::to_string(profile[i]);
    return s + "]";
}

template <Direction D>
TateVerdict verdict_impl(const System<D>& sys, std::size_t depth)
{
    constexpr bool inverse = D == Direction::inverse;
    const char* what = inverse ? "kernel" : "cokernel";
    const TailKind matching = inverse ? TailKind::bounded_ker : TailKind::bounded_coker;

    const Prefix p = sys.materialize(depth);  // bounded descriptors are checked here
    TateVerdict out{Verdict::inconclusive, {}, {}};
    for (const auto& m : p.transitions)
        out.profile.push_back(inverse ? kernel_dim(m) : cokernel_dim(m));
    const std::string prof = std::string(what) + " dims of prefix transitions " + profile_text(out.profile);
    const TailDescriptor& tail = sys.tail();

    if (tail.kind == matching) {
        out.verdict = Verdict::tate;
        out.evidence = prof + " consistent with declared " + to_string(tail.kind) + "(" +
                       std::to_string(tail.bound) + "); verdict relies on the declared tail";
    } else if (tail.kind == TailKind::stabilizing) {
        out.verdict = Verdict::tate;
        out.evidence = prof + "; transitions are isomorphisms from level " + std::to_string(tail.bound) +
                       " on (declared stabilizing tail)";
    } else if (tail.kind == TailKind::unbounded) {
        for (std::size_t i = 1; i < out.profile.size(); ++i)
            if (out.profile[i] < out.profile[i - 1])
                throw DescriptorViolation(prof + " decreases although the tail is declared unbounded");
        out.verdict = Verdict::not_tate;
        out.evidence = prof + " nondecreasing; declared unbounded tail means infinite-dimensional " + what + "s";
    } else {
        out.verdict = Verdict::inconclusive;
        out.evidence = prof + "; tail descriptor " + to_string(tail.kind) + " says nothing about " + what +
                       "s beyond the prefix";
    }
    return out;
}

}  // namespace

TateVerdict is_tate_verdict(const Tower& t, std::size_t depth)
{
    return verdict_impl(t, depth);
}

TateVerdict is_tate_verdict(const IndTower& t, std::size_t depth)
{
    return verdict_impl(t, depth);
}

}  // namespace tatespace
