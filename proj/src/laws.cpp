#include "tatespace/laws.hpp"

#include "tatespace/bidirected.hpp"
#include "tatespace/cli.hpp"
#include "tatespace/duality.hpp"
#include "tatespace/errors.hpp"
#include "tatespace/generators.hpp"
#include "tatespace/json_io.hpp"
#include "tatespace/linalg.hpp"
#include "tatespace/splitting.hpp"
#include "tatespace/tensor.hpp"

#include <future>
#include <sstream>

namespace tatespace {

namespace {

LawResult failed(std::string detail)
{
    return {false, std::move(detail)};
}

LawResult passed(std::size_t instances)
{
    return {true, std::to_string(instances) + " instances"};
}

const FieldSpec& field_for(std::size_t i)
{
    static const FieldSpec two(2), five(5);
    return i % 2 ? five : two;
}

// ------------------------------------------------------------------ exactla

LawResult solve_consistent(std::uint64_t seed)
{
    Rng rng(seed);
    std::size_t count = 0;
    for (std::uint64_t p : {2, 3, 5, 101}) {
        const FieldSpec f(p);
        for (int t = 0; t < 1000; ++t, ++count) {
            const Matrix m = rng.matrix(f, rng.range(1, 6), rng.range(1, 6));
            const Matrix b = m * rng.matrix(f, m.cols(), rng.range(1, 3));
            const auto x = solve_linear(m, b);
            if (!x || !(m * *x == b))
                return failed("GF(" + std::to_string(p) + ") system " + std::to_string(t) + " not solved");
        }
    }
    return passed(count);
}

LawResult kernel_image(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 500; ++t) {
        const FieldSpec& f = field_for(t);
        const Matrix m = rng.matrix(f, rng.range(0, 7), rng.range(0, 7));
        const Matrix k = kernel_basis(m);
        if (!(m * k).is_zero())
            return failed("kernel vector not killed, instance " + std::to_string(t));
        if (rank(k) + rank(image_basis(m)) != m.cols())
            return failed("rank-nullity fails, instance " + std::to_string(t));
    }
    return passed(500);
}

LawResult complement_determinism(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 500; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t n = rng.range(1, 8);
        const Matrix s = rng.injective(f, n, rng.range(0, n));
        const Matrix c1 = complement_basis(s);
        const Matrix c2 = complement_basis(s);
        if (!(c1 == c2))
            return failed("complement differs between calls, instance " + std::to_string(t));
        if (rank(s.hstack(c1)) != n || s.cols() + c1.cols() != n)
            return failed("S (+) complement is not the ambient space, instance " + std::to_string(t));
    }
    return passed(500);
}

LawResult kron_mixed_product(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 300; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t a = rng.range(0, 4), b = rng.range(0, 4), c = rng.range(0, 4);
        const std::size_t d = rng.range(0, 4), e = rng.range(0, 4), g = rng.range(0, 4);
        const Matrix a1 = rng.matrix(f, a, b), a2 = rng.matrix(f, b, c);
        const Matrix b1 = rng.matrix(f, d, e), b2 = rng.matrix(f, e, g);
        if (!(kron(a1 * a2, b1 * b2) == kron(a1, b1) * kron(a2, b2)))
            return failed("mixed-product law fails, instance " + std::to_string(t));
    }
    return passed(300);
}

// ------------------------------------------------------------------- spaces

LawResult truncation_functoriality(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t depth = rng.range(2, 6);
        const Tower a = random_tower(rng, f, 5, depth);
        const IndTower b = random_indtower(rng, f, 5, depth);
        const std::size_t shorter = rng.range(1, depth - 1);
        Prefix pa = a.materialize(depth), pb = b.materialize(depth);
        pa.dims.resize(shorter);
        pa.transitions.resize(shorter - 1);
        pb.dims.resize(shorter);
        pb.transitions.resize(shorter - 1);
        if (!(pa == a.materialize(shorter)) || !(pb == b.materialize(shorter)))
            return failed("restricted prefix differs, instance " + std::to_string(t));
    }
    return passed(200);
}

LawResult normalize_injective(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t depth = rng.range(1, 6);
        const IndTower s = random_indtower(rng, f, 5, depth);
        const NormalizedIndTower nt = normalize_indtower(s, depth);
        const Prefix p = nt.system.materialize(depth);
        for (const Matrix& tr : p.transitions)
            if (kernel_dim(tr) != 0)
                return failed("normalized transition not injective, instance " + std::to_string(t));
        if (p.dims.back() != s.dim(depth - 1) ||
            !(nt.embedding.back() == Matrix::identity(f, s.dim(depth - 1))))
            return failed("top level changed by normalization, instance " + std::to_string(t));
    }
    return passed(200);
}

LawResult lattice_complementary(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
        const FieldSpec& f = field_for(t);
        const FilteredSpace v = random_filtered(rng, f, rng.range(1, 10), 6);
        const std::size_t k = rng.range(1, v.open_flag_count());
        const Matrix& u = v.flag(k);
        // S = U_k plus a few random vectors, S' = a complement of S
        const Matrix s = image_basis(u.hstack(rng.matrix(f, v.ambient(), rng.range(0, 3))));
        const Matrix s2 = complement_basis(s);
        const LatticeVerdict c = lattice_check(v, s, LatticeMode::c);
        const LatticeVerdict d = lattice_check(v, s2, LatticeMode::d);
        if (!c.holds || !d.holds || *c.witness > k || *d.witness > k)
            return failed("complementary pair not recognised, instance " + std::to_string(t));
    }
    return passed(200);
}

LawResult tate_verdict_monotone(std::uint64_t seed)
{
    const FieldSpec f(2);
    for (std::size_t depth = 1; depth <= 8; ++depth)
        if (is_tate_verdict(power_series(f), depth).verdict != Verdict::tate)
            return failed("power series not Tate at depth " + std::to_string(depth));
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
        const Tower s = random_tower(rng, field_for(t), 5, 6);
        std::optional<Verdict> decided;
        for (std::size_t depth = 1; depth <= 6; ++depth) {
            const Verdict v = is_tate_verdict(s, depth).verdict;
            if (v == Verdict::inconclusive)
                continue;
            if (decided && *decided != v)
                return failed("verdict flipped with depth, instance " + std::to_string(t));
            decided = v;
        }
    }
    return passed(108);
}

// ----------------------------------------------------------------- duality

LawResult dual_involution(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t depth = rng.range(1, 6);
        const Tower a = random_tower(rng, f, 8, depth);
        const IndTower b = random_indtower(rng, f, 8, depth);
        const TateObj c = random_tate(rng, f, 8, depth);
        if (!(dual_object(dual_object(a)).materialize(depth) == a.materialize(depth)) ||
            !(dual_object(dual_object(b)).materialize(depth) == b.materialize(depth)) ||
            !(materialize(dual_object(dual_object(c)), depth) == materialize(c, depth)))
            return failed("double dual differs, instance " + std::to_string(t));
    }
    return passed(600);
}

LawResult dual_contravariant(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 300; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t a = rng.range(0, 6), b = rng.range(0, 6), c = rng.range(0, 6);
        const LinMap g(rng.matrix(f, b, a)), h(rng.matrix(f, c, b));
        if (!(dual_object(LinMap(h.mat * g.mat)).mat == dual_object(g).mat * dual_object(h).mat))
            return failed("dual(h g) != dual(g) dual(h), instance " + std::to_string(t));
    }
    return passed(300);
}

LawResult dual_invertibility(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 300; ++t) {
        const Matrix m = rng.matrix(field_for(t), rng.range(0, 5), rng.range(0, 5));
        if (is_invertible(m) != is_invertible(dual_object(LinMap(m)).mat))
            return failed("invertibility not preserved by duality, instance " + std::to_string(t));
    }
    return passed(300);
}

LawResult self_dual_planted(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 50; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t d = rng.range(1, 4);
        // V = D (+) D* with the hyperbolic pairing; the lattice D is isotropic.
        const Matrix id = Matrix::identity(f, d), zero = Matrix::zero(f, d, d);
        const Matrix hyper = zero.hstack(id).vstack(id.hstack(zero));
        const Matrix lattice = id.vstack(zero);
        const Matrix p = rng.invertible(f, 2 * d);
        const Matrix p_inv = *inverse(p);
        const Matrix l = image_basis(p_inv * lattice);
        const FilteredSpace v(f, 2 * d, {l, Matrix::zero(f, 2 * d, 0)});
        const SelfDualDecomposition out = self_dual_decompose(v, p.transpose() * hyper * p, l);
        if (out.d.cols() != d || out.k.cols() != d)
            return failed("recovered D has the wrong dimension, instance " + std::to_string(t));
        if (!(out.iso * out.iso_inverse == Matrix::identity(f, out.iso.rows())))
            return failed("certificate does not multiply out, instance " + std::to_string(t));
    }
    return passed(50);
}

LawResult extension_restricts(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
        const FieldSpec& f = field_for(t);
        const FilteredSpace b = random_filtered(rng, f, rng.range(1, 10), 6);
        const std::size_t k = rng.range(1, b.flag_count());
        const Matrix a = rng.injective(f, b.ambient(), rng.range(0, b.ambient()));
        const Matrix meet = coordinates(a, span_intersection(a, b.flag(k)));
        const Matrix allowed = kernel_basis(meet.transpose());
        const Matrix fa = (allowed * rng.matrix(f, allowed.cols(), 1)).transpose();
        const Matrix g = extend_functional(b, a, fa, k);
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!(g * a.col(j) == fa.block(0, j, 1, 1)))
                return failed("extension differs from f on A, instance " + std::to_string(t));
        for (std::size_t j = 0; j < b.flag(k).cols(); ++j)
            if (!(g * b.flag(k).col(j)).is_zero())
                return failed("extension does not kill U_k, instance " + std::to_string(t));
    }
    return passed(200);
}

// ------------------------------------------------------------------ tensor

LawResult tensor_symmetry(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t depth = rng.range(1, 4);
        const Tower a = random_tower(rng, f, 3, depth), b = random_tower(rng, f, 3, depth),
                    c = random_tower(rng, f, 3, depth);
        const Prefix ab = tensor_star_towers(a, b).materialize(depth);
        const Prefix ba = tensor_star_towers(b, a).materialize(depth);
        for (std::size_t i = 1; i < depth; ++i) {
            // level i -> i-1: swap(i-1) ab_link = ba_link swap(i)
            const Matrix lhs = swap_permutation(f, a.dim(i - 1), b.dim(i - 1)) * ab.transitions[i - 1];
            const Matrix rhs = ba.transitions[i - 1] * swap_permutation(f, a.dim(i), b.dim(i));
            if (!(lhs == rhs))
                return failed("swap does not intertwine, instance " + std::to_string(t));
        }
        if (!(tensor_star_towers(tensor_star_towers(a, b), c).materialize(depth) ==
              tensor_star_towers(a, tensor_star_towers(b, c)).materialize(depth)))
            return failed("associator is not the identity, instance " + std::to_string(t));
    }
    return passed(100);
}

LawResult tensor_unit(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t depth = rng.range(1, 5);
        const Tower a = random_tower(rng, f, 4, depth);
        const IndTower b = random_indtower(rng, f, 4, depth);
        const Tower one = Tower::constant(f, 1);
        const IndTower one_d = IndTower::constant(f, 1);
        if (!(tensor_star_towers(one, a).materialize(depth) == a.materialize(depth)) ||
            !(tensor_star_towers(a, one).materialize(depth) == a.materialize(depth)) ||
            !(tensor_indtowers(one_d, b).materialize(depth) == b.materialize(depth)) ||
            !(tensor_indtowers(b, one_d).materialize(depth) == b.materialize(depth)))
            return failed("constant k is not a unit, instance " + std::to_string(t));
    }
    return passed(100);
}

LawResult tensor_mixed_map(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t depth = rng.range(1, 4);
        const auto maps = mixed_comparison(random_tower(rng, f, 3, depth), random_tower(rng, f, 3, depth),
                                           random_tower(rng, f, 3, depth), depth);
        if (maps.size() != depth)
            return failed("comparison missing levels, instance " + std::to_string(t));
    }
    return passed(100);
}

LawResult curry_bijection(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 300; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t a = rng.range(0, 4), b = rng.range(1, 4), c = rng.range(0, 4);
        const Matrix beta = rng.matrix(f, c, a * b);
        const Matrix curried = curry(beta, a, b);
        if (curried.rows() * curried.cols() != beta.rows() * beta.cols() || !(uncurry(curried, a, b) == beta))
            return failed("uncurry(curry(beta)) != beta, instance " + std::to_string(t));
        const Matrix phi = rng.matrix(f, c * b, a);
        if (!(curry(uncurry(phi, a, b), a, b) == phi))
            return failed("curry(uncurry(phi)) != phi, instance " + std::to_string(t));
    }
    return passed(300);
}

LawResult hom_evaluation(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 50; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t depth = rng.range(1, 3);
        const HomPresentation h =
            hom_via_tensor(random_tate(rng, f, 3, depth + 1), random_tate(rng, f, 3, depth + 1), depth);
        for (const auto& levels : h.ev)
            for (const Matrix& ev : levels)
                if (rank(ev) != ev.cols())
                    return failed("Ev not injective, instance " + std::to_string(t));
    }
    return passed(50);
}

// --------------------------------------------------------------- splitting

LawResult split_random(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
        const FieldSpec& f = field_for(t);
        const FilteredSpace b = random_filtered(rng, f, rng.range(1, 12), 6);
        const Matrix a = rng.injective(f, b.ambient(), rng.range(0, b.ambient()));
        const SplitCertificate cert = split_filtered_ses(b, a);
        if (!(cert.pi * a == Matrix::identity(f, a.cols())))
            return failed("pi i != id, instance " + std::to_string(t));
        for (std::size_t k = 1; k <= b.flag_count(); ++k) {
            const Matrix& u = b.flag(k);
            if (!span_contains(span_intersection(a, u), a * cert.pi * u))
                return failed("pi(U_" + std::to_string(k) + ") not in A ∩ U, instance " + std::to_string(t));
        }
    }
    return passed(100);
}

/// A random morphism of short exact sequences, scrambled in the middle.
SplitLadder random_ladder(Rng& rng, const FieldSpec& f)
{
    const std::size_t a1 = rng.range(0, 3), c1 = rng.range(0, 3);
    const std::size_t a2 = a1 + rng.range(0, 2), c2 = rng.range(0, 3);
    const Matrix fm = rng.surjective(f, a1, a2);
    const Matrix hm = rng.matrix(f, c1, c2);
    const Matrix x = rng.matrix(f, a1, c2);
    const Matrix g_nf = fm.hstack(x).vstack(Matrix::zero(f, c1, a2).hstack(hm));
    const Matrix p1 = rng.invertible(f, a1 + c1), p2 = rng.invertible(f, a2 + c2);
    const Matrix p1_inv = *inverse(p1), p2_inv = *inverse(p2);
    auto incl = [&](std::size_t a, std::size_t c) { return Matrix::identity(f, a).vstack(Matrix::zero(f, c, a)); };
    auto quot = [&](std::size_t a, std::size_t c) { return Matrix::zero(f, c, a).hstack(Matrix::identity(f, c)); };
    SplitLadder l;
    l.i1 = p1 * incl(a1, c1);
    l.p1 = quot(a1, c1) * p1_inv;
    l.i2 = p2 * incl(a2, c2);
    l.p2 = quot(a2, c2) * p2_inv;
    l.f = fm;
    l.g = p1 * g_nf * p2_inv;
    l.h = hm;
    l.pi1 = Matrix::identity(f, a1).hstack(rng.matrix(f, a1, c1)) * p1_inv;
    return l;
}

LawResult lift_commutes(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
        const FieldSpec& f = field_for(t);
        const SplitLadder l = random_ladder(rng, f);
        const LiftedSplitting s = lift_splitting(l);
        if (!(l.f * s.pi2 == l.pi1 * l.g) || !(s.pi2 * l.i2 == Matrix::identity(f, l.i2.cols())))
            return failed("lifted retraction does not commute, instance " + std::to_string(t));
        if (!(l.g * s.s2 == s.s1 * l.h) || !(l.p2 * s.s2 == Matrix::identity(f, l.p2.rows())))
            return failed("sections do not commute, instance " + std::to_string(t));
    }
    return passed(200);
}

LawResult complement_certified(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
        const FieldSpec& f = field_for(t);
        const FilteredSpace b = random_filtered(rng, f, rng.range(1, 12), 6);
        const Matrix a = rng.injective(f, b.ambient(), rng.range(0, b.ambient()));
        const ComplementCertificate c = topological_complement(b, a);
        if (rank(a) + rank(c.complement) != b.ambient() || span_intersection(a, c.complement).cols() != 0)
            return failed("not a direct complement, instance " + std::to_string(t));
    }
    return passed(100);
}

LawResult open_mapping_guard(std::uint64_t)
{
    const FieldSpec f(2);
    for (std::size_t n = 2; n <= 6; ++n) {
        const FilteredSpace discrete(f, n, {Matrix::zero(f, n, 0)});
        std::vector<std::size_t> starts;
        for (std::size_t s = 1; s < n; ++s)
            starts.push_back(s);
        const FilteredSpace compact = FilteredSpace::coordinate_tails(f, n, starts);
        const IsomorphismVerdict v = certify_isomorphism(discrete, compact, Matrix::identity(f, n));
        if (!v.bijective || !v.continuous || v.certified)
            return failed("continuous bijection k[[t]] discrete -> compact was certified at n=" + std::to_string(n));
    }
    return passed(5);
}

// --------------------------------------------------------------- bidirected

LawResult grid_split_recover(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
        const PlantedGrid pg = random_planted_grid(rng, field_for(t), 6, 6, 8);
        const GridChangeOfBasis b = split_grid(pg.grid, pg.ses);
        for (std::size_t r = 0; r < pg.grid.m; ++r)
            for (std::size_t c = 0; c < pg.grid.n; ++c) {
                if (c + 1 < pg.grid.n &&
                    !(b.basis[r][c + 1] * pg.grid.right[r][c] * b.inverse[r][c] ==
                      block_diag(pg.ses.v_maps[c], Matrix::identity(pg.grid.field, pg.ses.w_dims[r]))))
                    return failed("right map not block diagonal, instance " + std::to_string(t));
                if (r + 1 < pg.grid.m &&
                    !(b.basis[r][c] * pg.grid.up[r][c] * b.inverse[r + 1][c] ==
                      block_diag(Matrix::identity(pg.grid.field, pg.ses.v_dims[c]), pg.ses.w_maps[r])))
                    return failed("up map not block diagonal, instance " + std::to_string(t));
            }
        const RFHDecomposition d = rfh_decompose(pg.grid, pg.ses, b);
        if (d.tate.d_lattice.materialize(pg.grid.n).dims != pg.truth.v_dims ||
            d.tate.c_lattice.materialize(pg.grid.m).dims != pg.truth.w_dims)
            return failed("planted profile not recovered, instance " + std::to_string(t));
    }
    return passed(100);
}

LawResult grid_duality(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
        const PlantedGrid pg = random_planted_grid(rng, field_for(t), 6, 6, 8);
        if (!dual_grid(pg.grid, pg.ses).certified)
            return failed("rfh of the dual grid differs from the dual of rfh, instance " + std::to_string(t));
    }
    return passed(100);
}

LawResult grid_kappa(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
        const PlantedGrid pg = random_planted_grid(rng, field_for(t), 6, 6, 8);
        if (!kappa_check(pg.grid, pg.ses, split_grid(pg.grid, pg.ses)).ok)
            return failed("kappa is not the identity in normal form, instance " + std::to_string(t));
    }
    return passed(100);
}

LawResult grid_opens(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 100; ++t) {
        const PlantedGrid pg = random_planted_grid(rng, field_for(t), 6, 6, 8);
        const RFHDecomposition d = rfh_decompose(pg.grid, pg.ses, split_grid(pg.grid, pg.ses));
        for (std::size_t r = 0; r < d.opens.size(); ++r) {
            if (r > 0 && d.opens[r].cols() > d.opens[r - 1].cols())
                return failed("dim U_r increases, instance " + std::to_string(t));
            if (!same_span(d.iota[r], d.opens[r]) || !(d.pi[r] * d.iota[r]).is_zero())
                return failed("im iota != ker pi, instance " + std::to_string(t));
        }
    }
    return passed(100);
}

// --------------------------------------------------------------------- cli

LawResult json_round_trip(std::uint64_t seed)
{
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
        const FieldSpec& f = field_for(t);
        const std::size_t depth = rng.range(1, 5);
        std::vector<AnyObject> objs{FinVect{rng.range(0, 6)},
                                    LinMap(rng.matrix(f, rng.range(0, 4), rng.range(0, 4))),
                                    random_tower(rng, f, 5, depth),
                                    random_indtower(rng, f, 5, depth),
                                    random_tate(rng, f, 5, depth),
                                    random_indlc(rng, f, 3, 4, depth)};
        objs.push_back(dual_object(std::get<IndLCObj>(objs.back())));
        for (const AnyObject& o : objs) {
            const Json once = to_json(o, depth);
            const Json twice = to_json(object_from_json(parse_json_text(once.dump()), f), depth);
            if (once != twice)
                return failed(kind_name(o) + " does not round-trip, instance " + std::to_string(t));
        }
        const PlantedGrid pg = random_planted_grid(rng, f, 3, 3, 4);
        const GridDocument doc{pg.grid, pg.ses, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
        if (!(grid_from_json(parse_json_text(to_json(doc).dump()), f) == doc))
            return failed("grid does not round-trip, instance " + std::to_string(t));
    }
    return passed(200);
}

LawResult cli_determinism(std::uint64_t seed)
{
    auto run = [](const std::vector<std::string>& args, const std::string& input) {
        std::istringstream in(input);
        std::ostringstream out, err;
        const int code = run_command(args, in, out, err);
        return std::to_string(code) + "\n" + out.str() + err.str();
    };
    const std::string s = std::to_string(seed % 1000000);
    for (const char* kind : {"tower", "tate"}) {
        const std::string a = run({"gen", "--kind", kind, "--seed", s}, "");
        if (a != run({"gen", "--kind", kind, "--seed", s}, ""))
            return failed(std::string("gen --kind ") + kind + " differs between runs");
        const std::string obj = a.substr(a.find('\n') + 1);
        if (run({"dual", "-"}, obj) != run({"dual", "-"}, obj))
            return failed("dual differs between runs");
    }
    Rng rng(seed);
    const PlantedGrid pg = random_planted_grid(rng, FieldSpec(5), 4, 4, 6);
    const std::string grid = to_json(GridDocument{pg.grid, pg.ses, std::nullopt, std::nullopt, std::nullopt, std::nullopt}).dump();
    const std::string once = run({"decompose", "-"}, grid);
    if (once.rfind("0\n", 0) != 0 || once != run({"decompose", "-"}, grid))
        return failed("decompose is not deterministic or failed");
    if (run({"dual", "-"}, grid) != run({"dual", "-"}, grid))
        return failed("dual of a grid differs between runs");
    return passed(5);
}

std::vector<Law> build_registry()
{
    return {
        {"exactla", "solve-consistent-systems", solve_consistent},
        {"exactla", "kernel-image-rank", kernel_image},
        {"exactla", "complement-determinism", complement_determinism},
        {"exactla", "kron-mixed-product", kron_mixed_product},
        {"spaces", "truncation-functoriality", truncation_functoriality},
        {"spaces", "normalize-indtower-injective", normalize_injective},
        {"spaces", "lattice-complementary-pairs", lattice_complementary},
        {"spaces", "tate-verdict-monotone", tate_verdict_monotone},
        {"duality", "dual-involution", dual_involution},
        {"duality", "dual-contravariance", dual_contravariant},
        {"duality", "dual-preserves-invertibility", dual_invertibility},
        {"duality", "self-dual-planted", self_dual_planted},
        {"duality", "extend-functional", extension_restricts},
        {"tensor", "swap-and-associator", tensor_symmetry},
        {"tensor", "unit-laws", tensor_unit},
        {"tensor", "mixed-comparison", tensor_mixed_map},
        {"tensor", "curry-bijection", curry_bijection},
        {"tensor", "hom-evaluation", hom_evaluation},
        {"splitting", "split-filtered-ses", split_random},
        {"splitting", "lift-splitting-commutes", lift_commutes},
        {"splitting", "topological-complement", complement_certified},
        {"splitting", "open-mapping-guard", open_mapping_guard},
        {"bidirected", "split-grid-scramble-recover", grid_split_recover},
        {"bidirected", "rfh-duality", grid_duality},
        {"bidirected", "kappa-identity", grid_kappa},
        {"bidirected", "opens-exact-and-nested", grid_opens},
        {"cli", "json-round-trip", json_round_trip},
        {"cli", "determinism", cli_determinism},
    };
}

bool in_suite(const std::string& suite, const Law& law)
{
    if (suite == "laws")
        return true;
    if (suite == "grid")
        return law.module == "bidirected";
    return law.module == "splitting" || law.name == "extend-functional";
}

}  // namespace

const std::vector<Law>& all_laws()
{
    static const std::vector<Law> registry = build_registry();
    return registry;
}

SuiteOutcome run_suite(const std::string& suite, std::uint64_t seed)
{
    if (suite != "laws" && suite != "grid" && suite != "appendix")
        throw PreconditionError("unknown suite '" + suite + "' (expected laws, grid or appendix)");
    std::vector<std::pair<const Law*, std::future<LawResult>>> running;
    std::uint64_t index = 0;
    for (const Law& law : all_laws()) {
        ++index;
        if (!in_suite(suite, law))
            continue;
        const std::uint64_t law_seed = seed * 1000003u + index;
        running.emplace_back(&law, std::async(std::launch::async, [&law, law_seed] {
                                 try {
                                     return law.run(law_seed);
                                 } catch (const std::exception& e) {
                                     return LawResult{false, std::string("threw: ") + e.what()};
                                 }
                             }));
    }
    SuiteOutcome out;
    for (auto& [law, fut] : running) {
        LawResult r = fut.get();
        out.ok = out.ok && r.ok;
        out.results.emplace_back(law, std::move(r));
    }
    return out;
}

}  // namespace tatespace
