#include <doctest.h>

#include "helpers.hpp"
#include "permres/io.hpp"

using namespace permres;
using testing_support::generator_mats;

namespace
{

Module kc(int p)
{
    return make_free(GroupSpec(FieldSpec(p), 1), 1);
}

}   // namespace

TEST_CASE("group order cap")
{
    CHECK(GroupSpec(FieldSpec(5), 5).order() == 3125);
    CHECK_THROWS_AS(GroupSpec(FieldSpec(2), 12), Error);
    try
    {
        GroupSpec(FieldSpec(7), 5);
    }
    catch (const Error& e)
    {
        CHECK(e.kind() == ErrorKind::CapExceeded);
    }
}

TEST_CASE("subgroup lattice sizes")
{
    // subspaces of F_p^r counted by Gaussian binomials summed over dimensions
    CHECK(all_subgroups(GroupSpec(FieldSpec(2), 2)).size() == 5);
    CHECK(all_subgroups(GroupSpec(FieldSpec(3), 2)).size() == 6);
    CHECK(all_subgroups(GroupSpec(FieldSpec(2), 3)).size() == 16);
}

TEST_CASE("subgroup sum and intersection by enumeration")
{
    const GroupSpec g(FieldSpec(3), 2);
    const auto subs = all_subgroups(g);
    for (const auto& h : subs)
        for (const auto& k : subs)
        {
            const Subgroup meet = subgroup_intersection(h, k);
            const Subgroup join = subgroup_sum(h, k);
            for (std::size_t n = 0; n < g.order(); ++n)
            {
                const GroupElement x = g.element(n);
                CHECK(meet.contains(x) == (h.contains(x) && k.contains(x)));
                if (h.contains(x) || k.contains(x))
                    CHECK(join.contains(x));
            }
            CHECK(h.dim() + k.dim() == meet.dim() + join.dim());
        }
}

TEST_CASE("trivial and free modules")
{
    const GroupSpec c2(FieldSpec(2), 1);
    CHECK(make_trivial(c2, 1).dim() == 1);
    CHECK(make_trivial(c2, 0).dim() == 0);
    CHECK(radical(make_trivial(c2, 3)).module.dim() == 0);

    const Module kc2 = make_free(c2, 1);
    CHECK(kc2.generator(0) == Matrix::from_rows(FieldSpec(2), {{0, 1}, {1, 0}}));
    CHECK(make_free(c2, 0).dim() == 0);

    const GroupSpec v4(FieldSpec(2), 2);
    const Module kv4 = make_free(v4, 1);
    CHECK(kv4.dim() == 4);
    CHECK(radical(kv4).module.dim() == 3);
    CHECK(oracle::radical_dim(generator_mats(kv4), 4, 2) == 3);
}

TEST_CASE("validate reports the first violated identity")
{
    const FieldSpec f2(2);
    CHECK(validate(make_free(GroupSpec(f2, 2), 1)).ok);
    CHECK(validate(Module(GroupSpec(f2, 1), {Matrix::from_rows(f2, {{1, 1}, {0, 1}})})).ok);

    const Module bad(GroupSpec(f2, 2), {Matrix::from_rows(f2, {{1, 1}, {0, 1}}), Matrix::from_rows(f2, {{1, 0}, {1, 1}})});
    const auto report = validate(bad);
    CHECK_FALSE(report.ok);
    CHECK(report.kind == "commutativity");
    CHECK(report.i == 1);
    CHECK(report.j == 2);
    CHECK(report.message == "commutativity i=1 j=2");

    const Module wrong_order(GroupSpec(FieldSpec(3), 1), {Matrix::from_rows(FieldSpec(3), {{0, 1}, {1, 0}})});
    CHECK(validate(wrong_order).kind == "order");
}

TEST_CASE("radical, quotient and kernel on small cases")
{
    const FieldSpec f2(2);
    const Module kc2 = kc(2);
    const Submodule rad = radical(kc2);
    CHECK(rad.module.dim() == 1);
    CHECK(rad.incl.matrix == Matrix::column(f2, {1, 1}));

    const Quotient top = quotient(kc2, rad.incl);
    CHECK(top.module.dim() == 1);
    CHECK(top.module.generator(0).is_identity());
    CHECK((top.proj.matrix * rad.incl.matrix).is_zero());

    CHECK(quotient(kc2, zero_map(Module::zero(kc2.group()), kc2)).module.dim() == 2);
    CHECK(quotient(kc2, identity_map(kc2)).module.dim() == 0);

    const Module kc3 = kc(3);
    const Module k = make_trivial(kc3.group(), 1);
    const ModuleMap aug(kc3, k, Matrix::from_rows(FieldSpec(3), {{1, 1, 1}}));
    CHECK(aug.intertwines());
    CHECK(kernel(aug).module.dim() == 2);
    CHECK(kernel(identity_map(kc3)).module.dim() == 0);
    CHECK(kernel(zero_map(kc3, k)).module.dim() == 3);
}

TEST_CASE("radical dimension matches enumeration on random modules")
{
    for (int p : {2, 3})
        for (int r : {1, 2})
            for (std::uint64_t seed = 0; seed < 4; ++seed)
            {
                const GroupSpec g(FieldSpec(p), r);
                const Module m = random_module(g, 3, seed);
                REQUIRE(validate(m).ok);
                CHECK(radical(m).module.dim() == static_cast<std::size_t>(oracle::radical_dim(generator_mats(m), 3, p)));
            }
}

TEST_CASE("direct sum biproduct identities")
{
    const Module a = kc(3);
    const Module b = make_trivial(a.group(), 2);
    const DirectSum s = direct_sum(a, b);
    CHECK(s.module.dim() == 5);
    CHECK((s.proj1.matrix * s.inj1.matrix).is_identity());
    CHECK((s.proj2.matrix * s.inj2.matrix).is_identity());
    CHECK((s.proj1.matrix * s.inj2.matrix).is_zero());
    CHECK((s.inj1.matrix * s.proj1.matrix + s.inj2.matrix * s.proj2.matrix).is_identity());
    CHECK(direct_sum(a, Module::zero(a.group())).module == a);
    CHECK(direct_sum(make_trivial(a.group(), 1), make_trivial(a.group(), 1)).module == make_trivial(a.group(), 2));
}

TEST_CASE("tensor, dual and hom spaces")
{
    const Module kc2 = kc(2);
    const Module k = make_trivial(kc2.group(), 1);
    CHECK(tensor(k, kc2) == kc2);
    const Module sq = tensor(kc2, kc2);
    CHECK(sq.dim() == 4);
    CHECK(free_rank(sq) == 2);

    CHECK(dual(k) == k);
    const Module m = random_module(GroupSpec(FieldSpec(3), 2), 4, 3);
    CHECK(dual(dual(m)) == m);
    const Module kv = make_free(GroupSpec(FieldSpec(2), 2), 1);
    CHECK(free_rank(dual(kv)) == 1);

    CHECK(hom_space(k, k).size() == 1);
    const Module kc3 = kc(3);
    const Module k3 = make_trivial(kc3.group(), 1);
    CHECK(hom_space(k3, kc3).size() == 1);
    CHECK(oracle::hom_dim(generator_mats(k3), generator_mats(kc3), 1, 3, 3) == 1);
    CHECK(hom_space(kv, kv).size() == 4);
    CHECK(oracle::hom_dim(generator_mats(kv), generator_mats(kv), 4, 4, 2) == 4);
    for (const auto& x : hom_space(kc3, kc3))
        CHECK(ModuleMap(kc3, kc3, x).intertwines());
}

TEST_CASE("hom space dimension matches enumeration")
{
    const GroupSpec g(FieldSpec(2), 2);
    const Module a = random_module(g, 2, 1);
    const Module b = random_module(g, 3, 2);
    CHECK(hom_space(a, b).size()
          == static_cast<std::size_t>(oracle::hom_dim(generator_mats(a), generator_mats(b), 2, 3, 2)));
    CHECK(hom_space(b, a).size()
          == static_cast<std::size_t>(oracle::hom_dim(generator_mats(b), generator_mats(a), 3, 2, 2)));
}

TEST_CASE("composition series")
{
    const Module kc2 = kc(2);
    const auto cs = composition_series(kc2);
    CHECK(cs.terms.size() == 3);
    CHECK(cs.terms[1].dim() == 1);
    CHECK(cs.flag_basis.col(0) == Matrix::column(FieldSpec(2), {1, 1}));

    CHECK(composition_series(make_trivial(kc2.group(), 3)).inclusions.size() == 3);

    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        const Module m = random_module(GroupSpec(FieldSpec(3), 2), 4, seed);
        const auto series = composition_series(m);
        REQUIRE(series.inclusions.size() == 4);
        CHECK(series.terms.back() == m);
        for (const auto& incl : series.inclusions)
        {
            CHECK(incl.intertwines());
            const auto ses = ses_from_flag(incl);
            CHECK_FALSE(ses_violation(ses).has_value());
            CHECK(ses.proj.target.dim() == 1);
            CHECK(ses.proj.target.generator(0).is_identity());
            CHECK(ses.proj.target.generator(1).is_identity());
        }
    }
}

TEST_CASE("projective cover and Heller loops")
{
    const GroupSpec c2(FieldSpec(2), 1);
    const Module k = make_trivial(c2, 1);
    const ProjectiveCover cover = projective_cover(k);
    CHECK(cover.rank == 1);
    CHECK(cover.free.dim() == 2);
    CHECK(cover.pi.matrix == Matrix::from_rows(FieldSpec(2), {{1, 1}}));
    CHECK(kernel(cover.pi).module.dim() == 1);
    CHECK(projective_cover(Module::zero(c2)).free.dim() == 0);

    const Module free2 = make_free(GroupSpec(FieldSpec(3), 1), 2);
    CHECK(projective_cover(free2).rank == 2);
    CHECK(projective_cover(free2).pi.injective());
    CHECK(omega(free2).module.dim() == 0);

    const GroupSpec c3(FieldSpec(3), 1);
    CHECK(omega(make_trivial(c3, 1)).module.dim() == 2);

    for (int p : {2, 3})
    {
        const GroupSpec g(FieldSpec(p), 1);
        const Module kk = make_trivial(g, 1);
        const IsoProbe probe = iso_probe(omega_power(kk, 2), kk);
        CHECK(probe.verdict == IsoVerdict::Isomorphic);
        REQUIRE(probe.iso.has_value());
        CHECK(probe.iso->intertwines());
    }
}

TEST_CASE("cover kernel dimension on random modules")
{
    for (std::uint64_t seed = 0; seed < 6; ++seed)
    {
        const GroupSpec g(FieldSpec(2), 2);
        const Module m = random_module(g, 5, seed);
        const ProjectiveCover cover = projective_cover(m);
        const int rad = oracle::radical_dim(generator_mats(m), 5, 2);
        CHECK(cover.rank == static_cast<std::size_t>(5 - rad));
        CHECK(cover.pi.surjective());
        CHECK(cover.pi.intertwines());
        CHECK(omega(m).module.dim() == cover.rank * 4 - 5);
    }
}

TEST_CASE("free rank and strip_free")
{
    const GroupSpec c2(FieldSpec(2), 1);
    const Module mixed = direct_sum(make_free(c2, 1), make_trivial(c2, 1)).module;
    CHECK(free_rank(mixed) == 1);
    CHECK(free_rank(make_trivial(c2, 1)) == 0);
    CHECK(free_rank(make_free(GroupSpec(FieldSpec(3), 2), 2)) == 2);

    const FreeSplitting s = strip_free(mixed);
    CHECK(s.free_rank == 1);
    CHECK(s.stripped.dim() == 1);
    CHECK(s.to_sum.intertwines());
    CHECK((s.from_sum.matrix * s.to_sum.matrix).is_identity());

    const FreeSplitting all = strip_free(make_free(GroupSpec(FieldSpec(3), 1), 2));
    CHECK(all.free_rank == 2);
    CHECK(all.stripped.dim() == 0);

    for (std::uint64_t seed = 0; seed < 6; ++seed)
    {
        const GroupSpec g(FieldSpec(3), 1);
        const Module m = random_module(g, 5, seed);
        const auto norm = oracle::norm_sum(generator_mats(m), 5, 3);
        CHECK(free_rank(m) == static_cast<std::size_t>(oracle::rank(norm, 5, 3)));
        const FreeSplitting split = strip_free(m);
        CHECK(split.stripped.dim() + split.free_rank * 3 == 5);
        CHECK(free_rank(split.stripped) == 0);
        CHECK(split.to_sum.intertwines());
        CHECK(split.from_sum.intertwines());
    }
}

TEST_CASE("iso_probe verdicts")
{
    const Module m = random_module(GroupSpec(FieldSpec(2), 2), 3, 4);
    CHECK(iso_probe(m, m).verdict == IsoVerdict::Isomorphic);
    const GroupSpec c2(FieldSpec(2), 1);
    CHECK(iso_probe(make_trivial(c2, 1), make_free(c2, 1)).verdict == IsoVerdict::NotIsomorphic);
    CHECK(iso_probe(make_trivial(c2, 2), make_free(c2, 1)).verdict == IsoVerdict::NotIsomorphic);
}
