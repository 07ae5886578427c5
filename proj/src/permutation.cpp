#include "permres/permutation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace permres
{

namespace
{

GroupElement add_generator(const FieldSpec& f, GroupElement g, int i)
{
    g[static_cast<std::size_t>(i)] = f.reduce(g[static_cast<std::size_t>(i)] + 1);
    return g;
}

/// Sorts orbit parts canonically and renumbers the labels to match.
PermutationTag make_tag(const GroupSpec& group, const std::vector<Subgroup>& orbit_parts,
                        std::vector<CosetLabel> labels)
{
    std::vector<std::uint32_t> order(orbit_parts.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return orbit_parts[a] < orbit_parts[b]; });
    std::vector<std::uint32_t> renumber(orbit_parts.size());
    std::vector<Subgroup> sorted;
    sorted.reserve(orbit_parts.size());
    for (std::uint32_t pos = 0; pos < order.size(); ++pos)
    {
        renumber[order[pos]] = pos;
        sorted.push_back(orbit_parts[order[pos]]);
    }
    for (auto& label : labels)
        label.part = renumber[label.part];
    return {PermutationDescriptor(group, std::move(sorted)), std::move(labels)};
}

std::vector<Permutation> permutations_of(const Module& m)
{
    std::vector<Permutation> perms;
    if (m.has_permutation_form())
    {
        for (int i = 0; i < m.rank(); ++i)
            perms.push_back(m.permutation(i));
        return perms;
    }
    const std::size_t d = m.dim();
    for (int i = 0; i < m.rank(); ++i)
    {
        const Matrix a = m.generator(i);
        Permutation perm(d, 0);
        std::vector<int> row_hits(d, 0);
        for (Index row = 0; row < a.rows(); ++row)
        {
            int count = 0;
            for (Index c = 0; c < a.cols(); ++c)
            {
                const int v = a(row, c);
                if (v == 0)
                    continue;
                if (v != 1 || ++count > 1)
                    throw Error(ErrorKind::NotPermutationBasis,
                                "generator " + std::to_string(i + 1) + ", row " + std::to_string(row)
                                    + ": not a 0/1 row with a single 1");
                perm[static_cast<std::size_t>(c)] = static_cast<std::uint32_t>(row);
                ++row_hits[static_cast<std::size_t>(row)];
            }
            if (count == 0)
                throw Error(ErrorKind::NotPermutationBasis,
                            "generator " + std::to_string(i + 1) + ", row " + std::to_string(row) + ": zero row");
        }
        for (Index c = 0; c < a.cols(); ++c)
        {
            if ((a.entries().col(c).array() != 0).count() != 1)
                throw Error(ErrorKind::NotPermutationBasis,
                            "generator " + std::to_string(i + 1) + ", column " + std::to_string(c)
                                + ": not a single 1");
        }
        perms.push_back(std::move(perm));
    }
    return perms;
}

}   // namespace

PermutationDescriptor::PermutationDescriptor(GroupSpec group, std::vector<Subgroup> parts)
    : group_(std::move(group)), parts_(std::move(parts))
{
    for (const auto& h : parts_)
        require_same_group(group_, h.group(), "permutation descriptor");
    std::stable_sort(parts_.begin(), parts_.end());
}

std::size_t descriptor_dim(const PermutationDescriptor& d)
{
    std::size_t n = 0;
    for (const auto& h : d.parts())
        n += h.index();
    return n;
}

bool descriptor_eq(const PermutationDescriptor& a, const PermutationDescriptor& b)
{
    return a == b;
}

bool is_free_descriptor(const PermutationDescriptor& d)
{
    return std::all_of(d.parts().begin(), d.parts().end(), [](const Subgroup& h) { return h.dim() == 0; });
}

std::string to_string(const PermutationDescriptor& d)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < d.parts().size(); ++k)
        os << (k > 0 ? ", " : "") << to_string(d.parts()[k]);
    os << "]";
    return os.str();
}

TaggedModule realize(const PermutationDescriptor& d)
{
    const GroupSpec& group = d.group();
    const FieldSpec f = group.field();
    const std::size_t dim = descriptor_dim(d);
    group.check_dim(dim, "realized permutation module");

    std::vector<CosetLabel> labels;
    labels.reserve(dim);
    std::vector<Permutation> gens(static_cast<std::size_t>(group.rank()), Permutation(dim));
    std::size_t offset = 0;
    for (std::uint32_t part = 0; part < d.parts().size(); ++part)
    {
        const Subgroup& h = d.parts()[part];
        const auto reps = h.coset_representatives();
        std::map<GroupElement, std::size_t> position;
        for (std::size_t k = 0; k < reps.size(); ++k)
            position.emplace(reps[k], k);
        for (std::size_t k = 0; k < reps.size(); ++k)
        {
            for (int i = 0; i < group.rank(); ++i)
            {
                const auto next = h.canonical_representative(add_generator(f, reps[k], i));
                gens[static_cast<std::size_t>(i)][offset + k]
                    = static_cast<std::uint32_t>(offset + position.at(next));
            }
            labels.push_back({part, reps[k]});
        }
        offset += reps.size();
    }
    Module m = Module::from_permutations(group, dim, std::move(gens));
    return {std::move(m), {d, std::move(labels)}};
}

PermutationDescriptor mackey_tensor(const Subgroup& h, const Subgroup& k)
{
    require_same_group(h.group(), k.group(), "mackey_tensor");
    const Subgroup sum = subgroup_sum(h, k);
    const Subgroup meet = subgroup_intersection(h, k);
    return PermutationDescriptor(h.group(), std::vector<Subgroup>(sum.index(), meet));
}

PermutationDescriptor tensor_descriptor(const PermutationDescriptor& a, const PermutationDescriptor& b)
{
    require_same_group(a.group(), b.group(), "tensor_descriptor");
    std::vector<Subgroup> parts;
    for (const auto& h : a.parts())
    {
        for (const auto& k : b.parts())
        {
            const auto piece = mackey_tensor(h, k);
            parts.insert(parts.end(), piece.parts().begin(), piece.parts().end());
        }
    }
    return PermutationDescriptor(a.group(), std::move(parts));
}

TaggedModule recognize(const Module& m)
{
    const GroupSpec& group = m.group();
    const FieldSpec f = group.field();
    const auto perms = permutations_of(m);
    const std::size_t d = m.dim();

    std::vector<int> orbit_of(d, -1);
    std::vector<GroupElement> label(d);
    std::vector<Subgroup> orbit_parts;
    std::vector<std::size_t> orbit_sizes;
    std::vector<std::size_t> queue;
    for (std::size_t start = 0; start < d; ++start)
    {
        if (orbit_of[start] >= 0)
            continue;
        const int orbit = static_cast<int>(orbit_parts.size());
        Matrix stabilizer(f, 0, group.rank());
        queue.assign(1, start);
        orbit_of[start] = orbit;
        label[start] = GroupElement(static_cast<std::size_t>(group.rank()), 0);
        std::size_t size = 0;
        for (std::size_t head = 0; head < queue.size(); ++head)
        {
            const std::size_t x = queue[head];
            ++size;
            for (int i = 0; i < group.rank(); ++i)
            {
                const std::size_t y = perms[static_cast<std::size_t>(i)][x];
                GroupElement g = add_generator(f, label[x], i);
                if (orbit_of[y] < 0)
                {
                    orbit_of[y] = orbit;
                    label[y] = std::move(g);
                    queue.push_back(y);
                    continue;
                }
                // Schreier generator of the stabilizer
                Matrix diff(f, 1, group.rank());
                bool nonzero = false;
                for (int j = 0; j < group.rank(); ++j)
                {
                    const int v = f.reduce(g[static_cast<std::size_t>(j)] - label[y][static_cast<std::size_t>(j)]);
                    diff.set(0, j, v);
                    nonzero = nonzero || v != 0;
                }
                if (nonzero)
                    stabilizer = Subgroup(group, vstack(stabilizer, diff)).basis();
            }
        }
        orbit_parts.emplace_back(group, stabilizer);
        orbit_sizes.push_back(size);
        if (size * (group.order() / orbit_parts.back().index()) != group.order()
            || size != orbit_parts.back().index())
            throw Error(ErrorKind::InvalidInput, "orbit sizes are inconsistent with an action of E");
    }

    std::vector<CosetLabel> labels(d);
    for (std::size_t x = 0; x < d; ++x)
    {
        const auto& h = orbit_parts[static_cast<std::size_t>(orbit_of[x])];
        labels[x] = {static_cast<std::uint32_t>(orbit_of[x]), h.canonical_representative(label[x])};
    }
    PermutationTag tag = make_tag(group, orbit_parts, std::move(labels));
    Module module = m.has_permutation_form() ? m : Module::from_permutations(group, d, perms);
    return {std::move(module), std::move(tag)};
}

Module module_from_tag(const PermutationTag& tag)
{
    const GroupSpec& group = tag.descriptor.group();
    const FieldSpec f = group.field();
    const auto& parts = tag.descriptor.parts();
    const std::size_t d = tag.basis_map.size();

    std::map<std::pair<std::uint32_t, GroupElement>, std::size_t> position;
    for (std::size_t x = 0; x < d; ++x)
    {
        const auto& label = tag.basis_map[x];
        if (label.part >= parts.size() || static_cast<int>(label.rep.size()) != group.rank())
            throw Error(ErrorKind::InvalidInput, "tag label " + std::to_string(x) + " is malformed");
        const auto rep = parts[label.part].canonical_representative(label.rep);
        if (rep != label.rep)
            throw Error(ErrorKind::InvalidInput, "tag label " + std::to_string(x) + " is not a canonical coset");
        if (!position.emplace(std::make_pair(label.part, rep), x).second)
            throw Error(ErrorKind::InvalidInput, "tag label " + std::to_string(x) + " is repeated");
    }

    std::vector<Permutation> gens(static_cast<std::size_t>(group.rank()), Permutation(d));
    for (std::size_t x = 0; x < d; ++x)
    {
        const auto& label = tag.basis_map[x];
        for (int i = 0; i < group.rank(); ++i)
        {
            const auto next = parts[label.part].canonical_representative(add_generator(f, label.rep, i));
            auto it = position.find({label.part, next});
            if (it == position.end())
                throw Error(ErrorKind::InvalidInput, "tag is missing a coset of part " + std::to_string(label.part));
            gens[static_cast<std::size_t>(i)][x] = static_cast<std::uint32_t>(it->second);
        }
    }
    return Module::from_permutations(group, d, std::move(gens));
}

std::optional<std::string> tag_violation(const Module& m, const PermutationTag& tag)
{
    if (!(m.group() == tag.descriptor.group()))
        return "tag group differs from module group";
    if (tag.basis_map.size() != m.dim() || descriptor_dim(tag.descriptor) != m.dim())
        return "tag dimension " + std::to_string(descriptor_dim(tag.descriptor)) + " differs from module dimension "
               + std::to_string(m.dim());
    std::vector<std::size_t> counts(tag.descriptor.parts().size(), 0);
    for (const auto& label : tag.basis_map)
    {
        if (label.part >= counts.size())
            return "tag label refers to a missing part";
        ++counts[label.part];
    }
    for (std::size_t k = 0; k < counts.size(); ++k)
    {
        if (counts[k] != tag.descriptor.parts()[k].index())
            return "part " + std::to_string(k) + " has the wrong number of cosets";
    }
    try
    {
        if (!(module_from_tag(tag) == m))
            return "generator action differs from the coset action named by the tag";
    }
    catch (const Error& e)
    {
        return std::string(e.what());
    }
    return std::nullopt;
}

PermutationTag tag_direct_sum(const PermutationTag& a, const PermutationTag& b)
{
    require_same_group(a.descriptor.group(), b.descriptor.group(), "tag_direct_sum");
    std::vector<Subgroup> parts = a.descriptor.parts();
    parts.insert(parts.end(), b.descriptor.parts().begin(), b.descriptor.parts().end());
    std::vector<CosetLabel> labels = a.basis_map;
    const auto shift = static_cast<std::uint32_t>(a.descriptor.parts().size());
    for (auto label : b.basis_map)
    {
        label.part += shift;
        labels.push_back(std::move(label));
    }
    return make_tag(a.descriptor.group(), parts, std::move(labels));
}

TaggedModule tensor_tagged(const TaggedModule& a, const TaggedModule& b)
{
    Module product = tensor(a.module, b.module);
    TaggedModule found = recognize(product);
    const auto expected = tensor_descriptor(a.tag.descriptor, b.tag.descriptor);
    if (!(found.tag.descriptor == expected))
        throw Error(ErrorKind::InternalError, "orbits of the product basis disagree with the Mackey rule");
    return found;
}

PermutationTag tag_restrict(const PermutationTag& tag, const std::vector<std::uint32_t>& keep_parts)
{
    std::vector<int> renumber(tag.descriptor.parts().size(), -1);
    std::vector<Subgroup> parts;
    for (auto k : keep_parts)
    {
        renumber.at(k) = static_cast<int>(parts.size());
        parts.push_back(tag.descriptor.parts()[k]);
    }
    std::vector<CosetLabel> labels;
    for (const auto& label : tag.basis_map)
    {
        if (renumber[label.part] >= 0)
            labels.push_back({static_cast<std::uint32_t>(renumber[label.part]), label.rep});
    }
    return make_tag(tag.descriptor.group(), parts, std::move(labels));
}

}   // namespace permres
