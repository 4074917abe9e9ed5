#include "tatespace/splitting.hpp"

#include "tatespace/errors.hpp"
#include "tatespace/linalg.hpp"

namespace tatespace {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw PreconditionError("lift_splitting: " + what);
}

void check_row(const Matrix& i, const Matrix& p, const char* name)
{
    const std::string row(name);
    require(i.rows() == p.cols(), row + " maps are not composable");
    require(rank(i) == i.cols(), row + " inclusion is not injective");
    require(rank(p) == p.rows(), row + " quotient is not surjective");
    require((p * i).is_zero(), row + " composite is not zero");
    require(i.cols() + p.rows() == i.rows(), row + " is not exact in the middle");
}

/// Section of p whose image is the given complement of im i.
Matrix section_along(const Matrix& p, const Matrix& complement)
{
    const auto inv = inverse(p * complement);
    if (!inv)
        throw CertificateError("section: complement does not map isomorphically onto the quotient");
    return complement * *inv;
}

/// First rows of [sub | comp]^-1: coordinates along sub, killing comp.
Matrix projection_along(const Matrix& sub, const Matrix& comp)
{
    const auto inv = inverse(sub.hstack(comp));
    if (!inv)
        throw CertificateError("projection: subspaces are not complementary");
    return inv->block(0, 0, sub.cols(), inv->cols());
}

/// Last rows of [sub | comp]^-1: the quotient by sub in the basis comp.
Matrix quotient_along(const Matrix& sub, const Matrix& comp)
{
    const auto inv = inverse(sub.hstack(comp));
    if (!inv)
        throw CertificateError("quotient: subspaces are not complementary");
    return inv->block(sub.cols(), 0, comp.cols(), inv->cols());
}

}  // namespace

LiftedSplitting lift_splitting(const SplitLadder& l)
{
    check_row(l.i1, l.p1, "top row");
    check_row(l.i2, l.p2, "bottom row");
    require(l.f.rows() == l.i1.cols() && l.f.cols() == l.i2.cols(), "f has the wrong shape");
    require(l.g.rows() == l.i1.rows() && l.g.cols() == l.i2.rows(), "g has the wrong shape");
    require(l.h.rows() == l.p1.rows() && l.h.cols() == l.p2.rows(), "h has the wrong shape");
    require(l.g * l.i2 == l.i1 * l.f, "left square does not commute");
    require(l.h * l.p2 == l.p1 * l.g, "right square does not commute");
    require(rank(l.f) == l.f.rows(), "f is not surjective");
    require(l.pi1.rows() == l.i1.cols() && l.pi1.cols() == l.i1.rows(), "pi1 has the wrong shape");
    require(l.pi1 * l.i1 == Matrix::identity(l.f.field(), l.i1.cols()), "pi1 is not a retraction of i1");

    const Matrix s2 = complement_basis(l.i2);
    const Matrix alpha = l.pi1 * l.g * s2;
    const Matrix theta = factor_through(l.f, alpha);
    const Matrix corrected = s2 - l.i2 * theta;

    LiftedSplitting out{projection_along(l.i2, corrected), Matrix(l.f.field(), 0, 0), Matrix(l.f.field(), 0, 0)};
    out.s1 = section_along(l.p1, kernel_basis(l.pi1));
    out.s2 = section_along(l.p2, corrected);

    const FieldSpec& k = l.f.field();
    if (!(out.pi2 * l.i2 == Matrix::identity(k, l.i2.cols())))
        throw CertificateError("lift_splitting: pi2 i2 != id");
    if (!(l.f * out.pi2 == l.pi1 * l.g))
        throw CertificateError("lift_splitting: f pi2 != pi1 g");
    if (!(l.p1 * out.s1 == Matrix::identity(k, l.p1.rows())) || !(l.p2 * out.s2 == Matrix::identity(k, l.p2.rows())))
        throw CertificateError("lift_splitting: section is not a section");
    if (!(l.pi1 * out.s1).is_zero() || !(out.pi2 * out.s2).is_zero())
        throw CertificateError("lift_splitting: pi s != 0");
    if (!(l.g * out.s2 == out.s1 * l.h))
        throw CertificateError("lift_splitting: g s2 != s1 h");
    return out;
}

namespace {

struct Truncation {
    Matrix lift;      ///< basis of a complement of U_k in B, lifting B/U_k
    Matrix quotient;  ///< q_k : B -> B/U_k
    Matrix sub;       ///< A_k ⊆ B/U_k
    Matrix comp;      ///< complement of A_k in B/U_k
    Matrix p;         ///< B/U_k -> B/U_k / A_k
    Matrix a_coords;  ///< A -> A_k
};

Truncation truncate(const Matrix& flag, const Matrix& a)
{
    Truncation t;
    t.lift = complement_basis(flag);
    t.quotient = quotient_along(flag, t.lift);
    t.sub = image_basis(t.quotient * a);
    t.comp = complement_basis(t.sub);
    t.p = quotient_along(t.sub, t.comp);
    t.a_coords = coordinates(t.sub, t.quotient * a);
    return t;
}

}  // namespace

SplitCertificate split_filtered_ses(const FilteredSpace& b, const Matrix& a)
{
    if (a.rows() != b.ambient())
        throw ShapeError("split_filtered_ses: subspace lives in the wrong ambient space");
    if (!has_independent_columns(a))
        throw PreconditionError("split_filtered_ses: subspace columns are dependent");
    const FieldSpec& k = b.field();
    const std::size_t n = b.flag_count();

    std::vector<Truncation> levels;
    for (std::size_t j = 1; j <= n; ++j)
        levels.push_back(truncate(b.flag(j), a));

    std::vector<Matrix> pis;
    pis.push_back(projection_along(levels[0].sub, levels[0].comp));
    for (std::size_t j = 1; j < n; ++j) {
        const Truncation& top = levels[j - 1];
        const Truncation& bottom = levels[j];
        SplitLadder ladder;
        ladder.i1 = top.sub;
        ladder.p1 = top.p;
        ladder.i2 = bottom.sub;
        ladder.p2 = bottom.p;
        ladder.g = top.quotient * bottom.lift;
        ladder.f = coordinates(top.sub, ladder.g * bottom.sub);
        ladder.h = top.p * ladder.g * bottom.comp;
        ladder.pi1 = pis.back();
        pis.push_back(lift_splitting(ladder).pi2);
    }

    // U_N = 0, so the last truncation is B itself and A_N = A.
    const Truncation& last = levels.back();
    SplitCertificate out;
    out.pi = coordinates(a, last.sub) * pis.back() * last.quotient;
    if (!(out.pi * a == Matrix::identity(k, a.cols())))
        throw CertificateError("split_filtered_ses: pi i != id");

    const Matrix c_basis = complement_basis(a);
    out.quotient = quotient_along(a, c_basis);
    out.s = section_along(out.quotient, kernel_basis(out.pi));
    if (!(out.pi * out.s).is_zero() || !(out.quotient * out.s == Matrix::identity(k, c_basis.cols())))
        throw CertificateError("split_filtered_ses: section certificate failed");

    const Matrix retraction = a * out.pi;
    for (std::size_t j = 0; j < n; ++j) {
        const Truncation& t = levels[j];
        LevelSplitting rec{j + 1, t.quotient, t.sub, pis[j], false};
        rec.compatible = t.a_coords * out.pi == pis[j] * t.quotient;
        if (!rec.compatible)
            throw CertificateError("split_filtered_ses: level " + std::to_string(j + 1) + " is not compatible");
        out.levels.push_back(std::move(rec));
        const Matrix& u = b.flag(j + 1);
        const bool contained = span_contains(u, retraction * u);
        if (!contained)
            throw CertificateError("split_filtered_ses: pi(U_" + std::to_string(j + 1) + ") not inside A ∩ U");
        out.flag_compatible.push_back(contained);
    }
    return out;
}

ComplementCertificate topological_complement(const FilteredSpace& b, const Matrix& a)
{
    const SplitCertificate split = split_filtered_ses(b, a);
    const FieldSpec& k = b.field();
    ComplementCertificate out{kernel_basis(split.pi), a * split.pi, Matrix(k, 0, 0), false, true};
    out.projection_s = Matrix::identity(k, b.ambient()) - out.projection_a;
    out.direct_sum = a.cols() + out.complement.cols() == b.ambient() &&
                     rank(a.hstack(out.complement)) == b.ambient();
    for (const Matrix& u : b.flags())
        out.flags_compatible = out.flags_compatible && span_contains(u, out.projection_a * u) &&
                               span_contains(u, out.projection_s * u);
    if (!out.direct_sum || !out.flags_compatible)
        throw CertificateError("topological_complement: certificate failed");
    return out;
}

IsomorphismVerdict certify_isomorphism(const FilteredSpace& src, const FilteredSpace& dst, const Matrix& map)
{
    if (map.rows() != dst.ambient() || map.cols() != src.ambient())
        throw ShapeError("certify_isomorphism: map shape does not match the spaces");
    IsomorphismVerdict out;
    const auto inv = inverse(map);
    out.bijective = inv.has_value();
    if (!out.bijective) {
        out.reason = "map is not bijective";
        return out;
    }

    out.continuous = true;
    for (std::size_t j = 1; j <= dst.open_flag_count() && out.continuous; ++j) {
        bool found = false;
        for (std::size_t i = 1; i <= src.open_flag_count() && !found; ++i)
            found = span_contains(dst.flag(j), map * src.flag(i));
        if (!found) {
            out.continuous = false;
            out.reason = "preimage of open U_" + std::to_string(j) + " of the target contains no open subspace";
        }
    }
    out.open = true;
    for (std::size_t i = 1; i <= src.open_flag_count() && out.open; ++i) {
        bool found = false;
        for (std::size_t j = 1; j <= dst.open_flag_count() && !found; ++j)
            found = span_contains(map * src.flag(i), dst.flag(j));
        if (!found && out.continuous) {
            out.open = false;
            out.reason = "image of open U_" + std::to_string(i) + " of the source contains no open subspace";
        }
        out.open = out.open && found;
    }
    out.certified = out.continuous && out.open;
    if (out.certified)
        out.inverse = *inv;
    return out;
}

}  // namespace tatespace
