#include <doctest.h>

#include "helpers.hpp"
#include "permres/permutation.hpp"

using namespace permres;

namespace
{

/// Stabilizer of each basis vector, read off by enumerating all of E.
void check_tag_against_enumeration(const TaggedModule& t)
{
    const Module& m = t.module;
    std::vector<std::vector<std::uint32_t>> perms;
    for (int i = 0; i < m.rank(); ++i)
        perms.push_back(m.permutation(i));
    for (std::size_t x = 0; x < m.dim(); ++x)
    {
        const Subgroup& h = t.tag.descriptor.parts()[t.tag.basis_map[x].part];
        CHECK(oracle::stabilizer_size(perms, x, m.group().p()) == m.group().order() / h.index());
    }
}

}   // namespace

TEST_CASE("realize small descriptors")
{
    const GroupSpec v4(FieldSpec(2), 2);
    CHECK(realize(PermutationDescriptor(v4, {Subgroup::trivial(v4)})).module == make_free(v4, 1));
    const TaggedModule k = realize(PermutationDescriptor(v4, {Subgroup::whole(v4)}));
    CHECK(k.module.dim() == 1);
    CHECK(k.module.generator(0).is_identity());

    const Subgroup h1 = Subgroup::coordinate_hyperplane(v4, 1);
    const TaggedModule c = realize(PermutationDescriptor(v4, {h1}));
    CHECK(c.module.dim() == 2);
    CHECK(c.module.generator(0) == Matrix::from_rows(FieldSpec(2), {{0, 1}, {1, 0}}));
    CHECK(c.module.generator(1).is_identity());
}

TEST_CASE("descriptor basics")
{
    const GroupSpec g(FieldSpec(3), 2);
    const Subgroup e = Subgroup::whole(g);
    const Subgroup o = Subgroup::trivial(g);
    const Subgroup h = Subgroup::coordinate_hyperplane(g, 2);
    CHECK(descriptor_dim(PermutationDescriptor(g, {e})) == 1);
    CHECK(descriptor_dim(PermutationDescriptor(g, {o})) == 9);
    CHECK(descriptor_eq(PermutationDescriptor(g, {h, o, e}), PermutationDescriptor(g, {e, h, o})));
    CHECK(is_free_descriptor(PermutationDescriptor(g, {o, o})));
    CHECK_FALSE(is_free_descriptor(PermutationDescriptor(g, {o, h})));
}

TEST_CASE("mackey rule on small cases")
{
    const GroupSpec v4(FieldSpec(2), 2);
    const Subgroup e = Subgroup::whole(v4);
    CHECK(mackey_tensor(e, e) == PermutationDescriptor(v4, {e}));

    const Subgroup h = Subgroup::coordinate_hyperplane(v4, 1);   // span{e_2}
    const Subgroup k = Subgroup::coordinate_hyperplane(v4, 2);   // span{e_1}
    CHECK(mackey_tensor(h, k) == PermutationDescriptor(v4, {Subgroup::trivial(v4)}));

    const GroupSpec g(FieldSpec(3), 2);
    const Subgroup line = Subgroup::coordinate_hyperplane(g, 1);
    CHECK(mackey_tensor(line, line) == PermutationDescriptor(g, {line, line, line}));

    const GroupSpec c23(FieldSpec(2), 3);
    PermutationDescriptor acc(c23, {Subgroup::coordinate_hyperplane(c23, 1)});
    for (int i = 2; i <= 3; ++i)
        acc = tensor_descriptor(acc, PermutationDescriptor(c23, {Subgroup::coordinate_hyperplane(c23, i)}));
    CHECK(acc == PermutationDescriptor(c23, {Subgroup::trivial(c23)}));

    const PermutationDescriptor d(g, {line, Subgroup::trivial(g)});
    CHECK(tensor_descriptor(d, PermutationDescriptor(g, {Subgroup::whole(g)})) == d);
}

TEST_CASE("tensor of realizations is recognized as the mackey descriptor")
{
    for (auto [p, r] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}})
    {
        const GroupSpec g(FieldSpec(p), r);
        const auto subs = all_subgroups(g);
        for (const auto& h : subs)
            for (const auto& k : subs)
            {
                const TaggedModule a = realize(PermutationDescriptor(g, {h}));
                const TaggedModule b = realize(PermutationDescriptor(g, {k}));
                const Module product = tensor(a.module, b.module);
                const TaggedModule seen = recognize(product);
                CHECK(seen.tag.descriptor == mackey_tensor(h, k));
                CHECK(product.dim() == a.module.dim() * b.module.dim());
                CHECK(descriptor_dim(mackey_tensor(h, k)) == h.index() * k.index());
                check_tag_against_enumeration(seen);
            }
    }
}

TEST_CASE("recognize round trips and rejects non-permutation bases")
{
    const GroupSpec g(FieldSpec(3), 2);
    const auto subs = all_subgroups(g);
    const PermutationDescriptor d(g, {subs[0], subs[2], subs[2], subs[5]});
    const TaggedModule t = realize(d);
    const TaggedModule back = recognize(t.module);
    CHECK(back.tag.descriptor == d);
    CHECK(module_from_tag(back.tag) == t.module);
    CHECK_FALSE(tag_violation(t.module, t.tag).has_value());
    check_tag_against_enumeration(back);

    const GroupSpec c2(FieldSpec(2), 1);
    const TaggedModule two = recognize(make_trivial(c2, 2));
    CHECK(two.tag.descriptor == PermutationDescriptor(c2, {Subgroup::whole(c2), Subgroup::whole(c2)}));

    const Module jordan(c2, {Matrix::from_rows(FieldSpec(2), {{1, 1}, {0, 1}})});
    try
    {
        recognize(jordan);
        FAIL("expected NotPermutationBasis");
    }
    catch (const Error& e)
    {
        CHECK(e.kind() == ErrorKind::NotPermutationBasis);
        CHECK(std::string(e.what()).find("generator 1") != std::string::npos);
    }
}

TEST_CASE("tags of sums and tensors")
{
    const GroupSpec g(FieldSpec(2), 2);
    const TaggedModule a = realize(PermutationDescriptor(g, {Subgroup::coordinate_hyperplane(g, 1)}));
    const TaggedModule b = realize(PermutationDescriptor(g, {Subgroup::coordinate_hyperplane(g, 2), Subgroup::whole(g)}));
    const PermutationTag sum = tag_direct_sum(a.tag, b.tag);
    CHECK_FALSE(tag_violation(direct_sum(a.module, b.module).module, sum).has_value());
    const TaggedModule prod = tensor_tagged(a, b);
    CHECK(prod.tag.descriptor == tensor_descriptor(a.tag.descriptor, b.tag.descriptor));
    CHECK(prod.module == tensor(a.module, b.module));

    const PermutationTag kept = tag_restrict(sum, {1});
    CHECK(kept.descriptor.parts().size() == 1);
    CHECK(descriptor_dim(kept.descriptor) == sum.descriptor.parts()[1].index());
    CHECK_FALSE(tag_violation(module_from_tag(kept), kept).has_value());
}
