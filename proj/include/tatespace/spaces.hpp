#pragma once

#include "tatespace/errors.hpp"
#include "tatespace/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tatespace {

struct FinVect {
    std::size_t dim = 0;
    friend bool operator==(const FinVect&, const FinVect&) = default;
};

/// A linear map between finite-dimensional discrete spaces; mat is dst x src.
struct LinMap {
    FinVect src;
    FinVect dst;
    Matrix mat;

    explicit LinMap(Matrix m) : src{m.cols()}, dst{m.rows()}, mat(std::move(m)) {}
    friend bool operator==(const LinMap&, const LinMap&) = default;
};

enum class TailKind { stabilizing, bounded_ker, bounded_coker, unbounded, unspecified };

/// Declared behaviour of a lazy system beyond the computed prefix.
///
/// stabilizing(c): every transition starting at level c (1-based) is an
/// isomorphism. bounded_ker(c) / bounded_coker(c): every transition has
/// kernel / cokernel of dimension at most c. unbounded: those dimensions
/// grow without bound. Materialization checks every level it produces
/// against the bounded and stabilizing kinds.
struct TailDescriptor {
    TailKind kind = TailKind::unspecified;
    std::size_t bound = 0;

    static TailDescriptor stabilizing(std::size_t from_level) { return {TailKind::stabilizing, from_level}; }
    static TailDescriptor bounded_ker(std::size_t c) { return {TailKind::bounded_ker, c}; }
    static TailDescriptor bounded_coker(std::size_t c) { return {TailKind::bounded_coker, c}; }
    static TailDescriptor unbounded() { return {TailKind::unbounded, 0}; }
    static TailDescriptor unspecified() { return {TailKind::unspecified, 0}; }

    friend bool operator==(const TailDescriptor&, const TailDescriptor&) = default;
};

std::string to_string(TailKind kind);
TailKind tail_kind_from_string(const std::string& s);
/// ker <-> coker; the others are self-dual.
TailDescriptor dual_tail(const TailDescriptor& t);

enum class Direction { inverse, direct };

/// One level of a system. `link` joins it to the previous level:
/// inverse systems store this -> previous (prev.dim x dim), direct systems
/// store previous -> this (dim x prev.dim). Level 0 has an empty link.
struct Level {
    std::size_t dim;
    Matrix link;
};

/// Explicit finite presentation: dims of the first N levels and the N-1
/// transitions between consecutive levels, stored as in Level::link.
struct Prefix {
    FieldSpec field;
    std::vector<std::size_t> dims;
    std::vector<Matrix> transitions;

    friend bool operator==(const Prefix&, const Prefix&) = default;
};

/// Lazy N-indexed system of finite-dimensional spaces.
///
/// Levels come from a pure generator and are memoized on first access;
/// level(i) always returns identical data. Copies share the memo table,
/// which is guarded so concurrent readers are safe.
template <Direction D>
class System {
public:
    using Generator = std::function<Level(std::size_t)>;

    /// `available` bounds the levels the generator can produce (nullopt: all).
    System(FieldSpec field, Generator gen, TailDescriptor tail, std::optional<std::size_t> available = std::nullopt);

    /// Explicit prefix. With a stabilizing tail the last level is continued
    /// by identity transitions; otherwise access past the prefix throws
    /// PrefixExhausted.
    static System from_prefix(const Prefix& prefix, TailDescriptor tail);
    /// Constant system of the given dimension with identity transitions.
    static System constant(FieldSpec field, std::size_t dim);
    static System zero(FieldSpec field) { return constant(field, 0); }

    const FieldSpec& field() const { return impl_->field; }
    const TailDescriptor& tail() const { return impl_->tail; }
    std::optional<std::size_t> available_levels() const { return impl_->available; }

    /// 0-based level; throws PrefixExhausted or DescriptorViolation.
    const Level& level(std::size_t i) const;
    std::size_t dim(std::size_t i) const { return level(i).dim; }
    /// Transition between 0-based levels i and i+1 (stored as link of i+1).
    const Matrix& transition(std::size_t i) const { return level(i + 1).link; }

    /// First `depth` levels; depth >= 1.
    Prefix materialize(std::size_t depth) const;

    /// True when the tail is stabilizing and the prefix up to the stable
    /// level is zero-dimensional, i.e. the system is known to be 0.
    bool known_zero() const;

private:
    struct Impl {
        Impl(FieldSpec f, Generator g, TailDescriptor t, std::optional<std::size_t> a)
            : field(f), gen(std::move(g)), tail(t), available(a)
        {
        }
        FieldSpec field;
        Generator gen;
        TailDescriptor tail;
        std::optional<std::size_t> available;
        mutable std::mutex mu;
        mutable std::deque<Level> memo;
    };
    std::shared_ptr<const Impl> impl_;

    void check_level(const Impl& impl, std::size_t i, const Level& lv) const;
};

/// Inverse system W_1 <- W_2 <- ...; truncation model of a linearly compact space.
using Tower = System<Direction::inverse>;
/// Direct system V_1 -> V_2 -> ...; truncation model of a discrete space of countable dimension.
using IndTower = System<Direction::direct>;

/// Memoized lazy sequence, finite when `length` is set.
template <class T>
class LazySeq {
public:
    using Generator = std::function<T(std::size_t)>;

    LazySeq(Generator gen, std::optional<std::size_t> length);
    static LazySeq from_vector(std::vector<T> items);

    std::optional<std::size_t> length() const { return impl_->length; }
    bool contains(std::size_t i) const { return !impl_->length || i < *impl_->length; }
    const T& at(std::size_t i) const;
    /// The first min(n, length) items.
    std::vector<T> prefix(std::size_t n) const;

private:
    struct Impl {
        Impl(Generator g, std::optional<std::size_t> n) : gen(std::move(g)), length(n) {}
        Generator gen;
        std::optional<std::size_t> length;
        mutable std::mutex mu;
        mutable std::deque<T> memo;
    };
    std::shared_ptr<const Impl> impl_;
};

/// Tate space in normal form c-lattice (+) d-lattice.
struct TateObj {
    Tower c_lattice;
    IndTower d_lattice;
};

/// Countable direct sum of linearly compact spaces.
struct IndLCObj {
    FieldSpec field;
    LazySeq<Tower> summands;
};

/// Countable product of discrete spaces.
struct ProDiscObj {
    FieldSpec field;
    LazySeq<IndTower> factors;
};

/// Materialized two-layer object: the first N pieces, each to depth M.
struct TwoLayerPrefix {
    std::vector<Prefix> pieces;
    friend bool operator==(const TwoLayerPrefix&, const TwoLayerPrefix&) = default;
};

TwoLayerPrefix materialize(const IndLCObj& obj, std::size_t depth, std::size_t inner_depth);
TwoLayerPrefix materialize(const ProDiscObj& obj, std::size_t depth, std::size_t inner_depth);

/// Levelwise c_n (+) d_n.
struct TatePrefix {
    Prefix c_lattice;
    Prefix d_lattice;
    friend bool operator==(const TatePrefix&, const TatePrefix&) = default;
};
TatePrefix materialize(const TateObj& obj, std::size_t depth);

// ---------------------------------------------------------------- builtins

/// k[[t]] as the tower k[t]/t^n, monomial basis 1, t, ..., t^(n-1),
/// transitions dropping the last coordinate.
Tower power_series(FieldSpec field);
/// k[t] as the union of polynomials of degree < n, with inclusions.
IndTower polynomial(FieldSpec field);
/// t^-1 k[t^-1] as spans of t^-1, ..., t^-n (in that order), with inclusions.
IndTower negative_powers(FieldSpec field);
/// k((t)) = k[[t]] (+) t^-1 k[t^-1].
TateObj laurent(FieldSpec field);

using BuiltinSpace = std::variant<Tower, TateObj, IndTower, FinVect>;
/// name: power_series | laurent | polynomial | constant (dimension n).
/// Throws PreconditionError for unknown names.
BuiltinSpace builtin_space(const std::string& name, FieldSpec field, std::size_t n = 0);

/// A finite-dimensional space regarded as Tate: c-lattice = constant tower, d-lattice = 0.
TateObj finite_tate(FieldSpec field, std::size_t dim);

// ------------------------------------------------------------ normalization

struct NormalizedIndTower {
    IndTower system;                ///< explicit prefix with injective transitions
    std::vector<Matrix> comparison; ///< original level i -> normalized level i
    std::vector<Matrix> embedding;  ///< normalized level i as a subspace of the top level
};

/// Level i becomes the image of level i in the top level of the prefix.
NormalizedIndTower normalize_indtower(const IndTower& t, std::size_t depth);

struct NormalizedTower {
    Tower system;                   ///< explicit prefix with surjective transitions
    std::vector<Matrix> comparison; ///< normalized level i -> original level i (inclusion)
};

/// Level i becomes the image of the deepest prefix level in level i. Only
/// correct relative to the prefix: deeper levels may shrink it further
/// unless the tail is stabilizing.
NormalizedTower normalize_tower(const Tower& t, std::size_t depth);

// ------------------------------------------------------------- Tate verdict

enum class Verdict { tate, not_tate, inconclusive };
std::string to_string(Verdict v);

struct TateVerdict {
    Verdict verdict;
    /// kernel dims (towers) or cokernel dims (ind-towers) of the prefix transitions
    std::vector<std::size_t> profile;
    std::string evidence;
};

/// Combines the prefix kernel/cokernel profile with the tail descriptor.
/// Throws DescriptorViolation when they disagree.
TateVerdict is_tate_verdict(const Tower& t, std::size_t depth);
TateVerdict is_tate_verdict(const IndTower& t, std::size_t depth);

// ------------------------------------------------------------ template impl

template <Direction D>
System<D>::System(FieldSpec field, Generator gen, TailDescriptor tail, std::optional<std::size_t> available)
    : impl_(std::make_shared<const Impl>(field, std::move(gen), tail, available))
{
}

template <Direction D>
const Level& System<D>::level(std::size_t i) const
{
    const Impl& impl = *impl_;
    std::lock_guard lock(impl.mu);
    while (impl.memo.size() <= i) {
        const std::size_t next = impl.memo.size();
        if (impl.available && next >= *impl.available)
            throw PrefixExhausted("level " + std::to_string(next + 1) + " requested but only " +
                                  std::to_string(*impl.available) + " levels are presented");
        Level lv = impl.gen(next);
        check_level(impl, next, lv);
        impl.memo.push_back(std::move(lv));
    }
    return impl.memo[i];
}

template <Direction D>
Prefix System<D>::materialize(std::size_t depth) const
{
    if (depth == 0)
        throw PreconditionError("materialize: depth must be >= 1");
    Prefix out{field(), {}, {}};
    for (std::size_t i = 0; i < depth; ++i) {
        const Level& lv = level(i);
        out.dims.push_back(lv.dim);
        if (i > 0)
            out.transitions.push_back(lv.link);
    }
    return out;
}

template <Direction D>
bool System<D>::known_zero() const
{
    if (tail().kind != TailKind::stabilizing)
        return false;
    const std::size_t upto = std::max<std::size_t>(tail().bound, 1);
    for (std::size_t i = 0; i < upto; ++i)
        if (dim(i) != 0)
            return false;
    return true;
}

template <class T>
LazySeq<T>::LazySeq(Generator gen, std::optional<std::size_t> length)
    : impl_(std::make_shared<const Impl>(std::move(gen), length))
{
}

template <class T>
LazySeq<T> LazySeq<T>::from_vector(std::vector<T> items)
{
    auto shared = std::make_shared<const std::vector<T>>(std::move(items));
    const std::size_t n = shared->size();
    return LazySeq([shared](std::size_t i) { return (*shared)[i]; }, n);
}

template <class T>
const T& LazySeq<T>::at(std::size_t i) const
{
    const Impl& impl = *impl_;
    if (impl.length && i >= *impl.length)
        throw PrefixExhausted("sequence item " + std::to_string(i + 1) + " requested but length is " +
                              std::to_string(*impl.length));
    std::lock_guard lock(impl.mu);
    while (impl.memo.size() <= i)
        impl.memo.push_back(impl.gen(impl.memo.size()));
    return impl.memo[i];
}

template <class T>
std::vector<T> LazySeq<T>::prefix(std::size_t n) const
{
    std::vector<T> out;
    for (std::size_t i = 0; i < n && contains(i); ++i)
        out.push_back(at(i));
    return out;
}

}  // namespace tatespace
