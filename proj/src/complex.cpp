#include "permres/complex.hpp"

#include <algorithm>

namespace permres
{

namespace
{

Module sum_of_modules(const GroupSpec& group, const std::vector<Module>& parts)
{
    Module total = Module::zero(group);
    for (const auto& m : parts)
        total = direct_sum(total, m).module;
    return total;
}

std::string degree_text(int j)
{
    return "degree " + std::to_string(j);
}

}   // namespace

// ------------------------------------------------------------- accessors --

Module Complex::term(int j) const
{
    if (j < 0 || j > top_degree())
        return Module::zero(group);
    return terms[static_cast<std::size_t>(j)];
}

std::size_t Complex::term_dim(int j) const
{
    if (j < 0 || j > top_degree())
        return 0;
    return terms[static_cast<std::size_t>(j)].dim();
}

Matrix Complex::d(int j) const
{
    if (j >= 1 && j <= top_degree())
        return differentials[static_cast<std::size_t>(j - 1)];
    return Matrix(group.field(), static_cast<Index>(term_dim(j - 1)), static_cast<Index>(term_dim(j)));
}

Matrix Complex::boundary(int j) const
{
    if (j == 0 && augmentation)
        return augmentation->matrix;
    return d(j);
}

PermutationTag empty_tag(const GroupSpec& group)
{
    return {PermutationDescriptor(group, {}), {}};
}

PermutationTag Complex::tag(int j) const
{
    if (!tags)
        throw Error(ErrorKind::InternalError, "complex carries no tags");
    if (j < 0 || j > top_degree())
        return empty_tag(group);
    return (*tags)[static_cast<std::size_t>(j)];
}

void check_shape(const Complex& c)
{
    const int n = c.top_degree();
    if (static_cast<int>(c.differentials.size()) != std::max(n, 0))
        throw Error(ErrorKind::DimensionMismatch, "complex needs one differential per degree 1..n");
    for (int j = 0; j <= n; ++j)
        require_same_group(c.group, c.terms[static_cast<std::size_t>(j)].group(), "complex term");
    for (int j = 1; j <= n; ++j)
    {
        const Matrix& d = c.differentials[static_cast<std::size_t>(j - 1)];
        if (d.rows() != static_cast<Index>(c.term_dim(j - 1)) || d.cols() != static_cast<Index>(c.term_dim(j)))
            throw Error(ErrorKind::DimensionMismatch, "differential d_" + std::to_string(j) + " has the wrong shape");
    }
    if (c.augmentation)
    {
        require_same_group(c.group, c.augmentation->target.group(), "augmentation");
        if (c.augmentation->matrix.rows() != c.augmentation->target.size()
            || c.augmentation->matrix.cols() != static_cast<Index>(c.term_dim(0)))
            throw Error(ErrorKind::DimensionMismatch, "augmentation has the wrong shape");
    }
    if (c.tags && c.tags->size() != c.terms.size())
        throw Error(ErrorKind::DimensionMismatch, "tags must align with terms");
}

Complex single_term_complex(const TaggedModule& term, std::optional<Augmentation> augmentation)
{
    Complex c;
    c.group = term.module.group();
    c.terms = {term.module};
    c.augmentation = std::move(augmentation);
    c.tags = std::vector<PermutationTag>{term.tag};
    check_shape(c);
    return c;
}

// -------------------------------------------------------------- homology --

HomologyReport homology(const Complex& c)
{
    const int n = c.top_degree();
    HomologyReport report;
    for (int j = 0; j <= n + 1; ++j)
        report.ranks.push_back(static_cast<std::size_t>(rank(c.boundary(j))));
    for (int j = 0; j <= n; ++j)
    {
        const long long dim = static_cast<long long>(c.term_dim(j));
        report.dims.push_back(dim - static_cast<long long>(report.ranks[static_cast<std::size_t>(j)])
                              - static_cast<long long>(report.ranks[static_cast<std::size_t>(j + 1)]));
    }
    if (c.augmentation)
        report.augmentation_defect = static_cast<long long>(c.augmentation->target.dim())
                                     - static_cast<long long>(report.ranks[0]);
    return report;
}

std::vector<long long> homology_dims(const Complex& c)
{
    return homology(c).dims;
}

long long euler_characteristic(const Complex& c)
{
    long long chi = 0;
    for (int j = 0; j <= c.top_degree(); ++j)
        chi += (j % 2 == 0 ? 1 : -1) * static_cast<long long>(c.term_dim(j));
    return chi;
}

std::optional<std::string> d_squared_violation(const Complex& c)
{
    const int n = c.top_degree();
    for (int j = c.augmentation ? 0 : 1; j < n; ++j)
    {
        if (!(c.boundary(j) * c.d(j + 1)).is_zero())
            return degree_text(j + 1) + ": " + (j == 0 ? std::string("eps . d_1 != 0")
                                                       : "d_" + std::to_string(j) + " . d_" + std::to_string(j + 1)
                                                             + " != 0");
    }
    return std::nullopt;
}

std::optional<std::string> intertwining_violation(const Complex& c)
{
    for (int j = 1; j <= c.top_degree(); ++j)
    {
        if (!ModuleMap(c.term(j), c.term(j - 1), c.d(j)).intertwines())
            return degree_text(j) + ": d_" + std::to_string(j) + " is not a module map";
    }
    if (c.augmentation && !ModuleMap(c.term(0), c.augmentation->target, c.augmentation->matrix).intertwines())
        return "degree 0: augmentation is not a module map";
    return std::nullopt;
}

bool is_resolution(const Complex& c)
{
    if (!c.augmentation)
        return false;
    if (d_squared_violation(c))
        return false;
    const auto h = homology(c);
    return h.augmentation_defect == 0
           && std::all_of(h.dims.begin(), h.dims.end(), [](long long v) { return v == 0; });
}

bool free_up_to(const Complex& c, int m)
{
    if (m < 0)
        throw Error(ErrorKind::InvalidInput, "free_up_to needs m >= 0");
    const int last = std::min(m, c.top_degree());
    for (int j = 0; j <= last; ++j)
    {
        if (c.tags)
        {
            if (!is_free_descriptor((*c.tags)[static_cast<std::size_t>(j)].descriptor))
                return false;
        }
        else if (projective_cover(c.term(j)).free.dim() != c.term_dim(j))
        {
            return false;
        }
    }
    return true;
}

// ------------------------------------------------------------ chain maps --

Matrix ChainMap::component(int j, const Complex& source, const Complex& target) const
{
    if (j >= 0 && static_cast<std::size_t>(j) < components.size())
        return components[static_cast<std::size_t>(j)];
    return Matrix(source.group.field(), static_cast<Index>(target.term_dim(j)), static_cast<Index>(source.term_dim(j)));
}

std::optional<std::string> chain_map_violation(const Complex& source, const Complex& target, const ChainMap& f,
                                               const std::optional<Matrix>& base)
{
    const int top = std::max(source.top_degree(), target.top_degree()) + 1;
    for (int j = 0; j <= top; ++j)
    {
        const Matrix fj = f.component(j, source, target);
        if (fj.rows() != static_cast<Index>(target.term_dim(j)) || fj.cols() != static_cast<Index>(source.term_dim(j)))
            return degree_text(j) + ": component has the wrong shape";
        if (!ModuleMap(source.term(j), target.term(j), fj).intertwines())
            return degree_text(j) + ": component is not a module map";
        if (j >= 1)
        {
            const Matrix lhs = target.d(j) * fj;
            const Matrix rhs = f.component(j - 1, source, target) * source.d(j);
            if (!(lhs == rhs))
                return degree_text(j) + ": d f_" + std::to_string(j) + " != f_" + std::to_string(j - 1) + " d";
        }
    }
    if (base)
    {
        if (!source.augmentation || !target.augmentation)
            return "augmentation compatibility requested on an unaugmented complex";
        if (!(target.augmentation->matrix * f.component(0, source, target) == *base * source.augmentation->matrix))
            return "degree 0: eps f_0 != f eps";
    }
    return std::nullopt;
}

// ------------------------------------------------------------------ cone --

Complex cone(const Complex& source, const Complex& target, const ChainMap& f)
{
    require_same_group(source.group, target.group, "cone");
    const FieldSpec field = source.group.field();
    const int top = std::max(source.top_degree() + 1, target.top_degree());
    const bool tagged = source.tags && target.tags;

    Complex c;
    c.group = source.group;
    std::vector<PermutationTag> tags;
    for (int j = 0; j <= top; ++j)
    {
        c.terms.push_back(direct_sum(source.term(j - 1), target.term(j)).module);
        if (tagged)
            tags.push_back(tag_direct_sum(source.tag(j - 1), target.tag(j)));
    }
    for (int j = 1; j <= top; ++j)
    {
        const Index q_prev = static_cast<Index>(source.term_dim(j - 1));
        const Index q_prev2 = static_cast<Index>(source.term_dim(j - 2));
        const Index p_cur = static_cast<Index>(target.term_dim(j));
        const Index p_prev = static_cast<Index>(target.term_dim(j - 1));
        Matrix d(field, q_prev2 + p_prev, q_prev + p_cur);
        d.set_block(0, 0, -source.d(j - 1));
        d.set_block(q_prev2, 0, f.component(j - 1, source, target));
        d.set_block(q_prev2, q_prev, target.d(j));
        c.differentials.push_back(std::move(d));
    }
    if (tagged)
        c.tags = std::move(tags);
    check_shape(c);
    return c;
}

// ---------------------------------------------------------------- tensor --

Complex tensor_complexes(const Complex& a, const Complex& b)
{
    require_same_group(a.group, b.group, "tensor_complexes");
    const FieldSpec field = a.group.field();
    const int na = a.top_degree();
    const int nb = b.top_degree();
    const bool tagged = a.tags && b.tags;

    Complex c;
    c.group = a.group;
    if (na < 0 || nb < 0)
    {
        if (a.augmentation && b.augmentation)
            c.augmentation = Augmentation{tensor(a.augmentation->target, b.augmentation->target),
                                          Matrix(field, 0, 0)};
        if (c.augmentation)
            c.augmentation->matrix = Matrix(field, c.augmentation->target.size(), 0);
        if (tagged)
            c.tags = std::vector<PermutationTag>{};
        return c;
    }

    // block (i, n - i) of degree n sits at offsets[n][i - lo(n)]
    const int top = na + nb;
    auto lo = [&](int n) { return std::max(0, n - nb); };
    auto hi = [&](int n) { return std::min(n, na); };
    std::vector<std::vector<Index>> offsets(static_cast<std::size_t>(top + 1));
    std::vector<PermutationTag> tags;
    for (int n = 0; n <= top; ++n)
    {
        std::vector<Module> blocks;
        std::optional<PermutationTag> tag;
        Index offset = 0;
        for (int i = lo(n); i <= hi(n); ++i)
        {
            offsets[static_cast<std::size_t>(n)].push_back(offset);
            if (tagged)
            {
                TaggedModule t = tensor_tagged({a.term(i), a.tag(i)}, {b.term(n - i), b.tag(n - i)});
                blocks.push_back(t.module);
                tag = tag ? tag_direct_sum(*tag, t.tag) : t.tag;
            }
            else
            {
                blocks.push_back(tensor(a.term(i), b.term(n - i)));
            }
            offset += blocks.back().size();
        }
        c.terms.push_back(sum_of_modules(a.group, blocks));
        if (tagged)
            tags.push_back(*tag);
    }

    const int sign_flip = field.p() - 1;
    for (int n = 1; n <= top; ++n)
    {
        Matrix d(field, static_cast<Index>(c.term_dim(n - 1)), static_cast<Index>(c.term_dim(n)));
        for (int i = lo(n); i <= hi(n); ++i)
        {
            const int j = n - i;
            const Index col = offsets[static_cast<std::size_t>(n)][static_cast<std::size_t>(i - lo(n))];
            if (i >= 1 && i - 1 >= lo(n - 1))
            {
                const Index row = offsets[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - 1 - lo(n - 1))];
                d.set_block(row, col, kron(a.d(i), Matrix::identity(field, static_cast<Index>(b.term_dim(j)))));
            }
            if (j >= 1 && i <= hi(n - 1))
            {
                const Index row = offsets[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i - lo(n - 1))];
                Matrix block = kron(Matrix::identity(field, static_cast<Index>(a.term_dim(i))), b.d(j));
                if (i % 2 == 1)
                    block = scaled(block, sign_flip);
                d.set_block(row, col, block);
            }
        }
        c.differentials.push_back(std::move(d));
    }

    if (a.augmentation && b.augmentation)
        c.augmentation = Augmentation{tensor(a.augmentation->target, b.augmentation->target),
                                      kron(a.augmentation->matrix, b.augmentation->matrix)};
    if (tagged)
        c.tags = std::move(tags);
    check_shape(c);
    return c;
}

Complex direct_sum_complexes(const Complex& a, const Complex& b)
{
    require_same_group(a.group, b.group, "direct_sum_complexes");
    const int top = std::max(a.top_degree(), b.top_degree());
    const bool tagged = a.tags && b.tags;
    Complex c;
    c.group = a.group;
    std::vector<PermutationTag> tags;
    for (int j = 0; j <= top; ++j)
    {
        c.terms.push_back(direct_sum(a.term(j), b.term(j)).module);
        if (tagged)
            tags.push_back(tag_direct_sum(a.tag(j), b.tag(j)));
    }
    for (int j = 1; j <= top; ++j)
        c.differentials.push_back(block_diagonal(a.d(j), b.d(j)));
    if (a.augmentation && b.augmentation)
        c.augmentation = Augmentation{direct_sum(a.augmentation->target, b.augmentation->target).module,
                                      block_diagonal(a.augmentation->matrix, b.augmentation->matrix)};
    if (tagged)
        c.tags = std::move(tags);
    check_shape(c);
    return c;
}

// ----------------------------------------------------------------- lifts --

namespace
{

/**
 * X : source -> target with D X = Y, built from one solve per orbit of the
 * tagged source basis and extended along the permutation action.
 */
Matrix lift_through_tag(const Matrix& d, const Matrix& y, const Module& source, const PermutationTag& tag,
                        const Module& target, int degree)
{
    const FieldSpec field = source.field();
    const std::size_t parts = tag.descriptor.parts().size();
    std::vector<Index> base(parts, -1);
    for (std::size_t x = 0; x < tag.basis_map.size(); ++x)
    {
        const auto& label = tag.basis_map[x];
        if (std::all_of(label.rep.begin(), label.rep.end(), [](int v) { return v == 0; }))
            base[label.part] = static_cast<Index>(x);
    }

    std::vector<Matrix> images(parts);
    std::vector<Index> free_cols;
    std::vector<std::size_t> free_parts;
    for (std::size_t k = 0; k < parts; ++k)
    {
        const Subgroup& h = tag.descriptor.parts()[k];
        if (h.dim() == 0)
        {
            free_cols.push_back(base[k]);
            free_parts.push_back(k);
            continue;
        }
        // the image of a coset generator must be fixed by its stabilizer
        Matrix system = d;
        Matrix rhs = y.col(base[k]);
        const Matrix id = Matrix::identity(field, target.size());
        for (Index row = 0; row < h.basis().rows(); ++row)
        {
            GroupElement g(static_cast<std::size_t>(h.basis().cols()));
            for (Index c = 0; c < h.basis().cols(); ++c)
                g[static_cast<std::size_t>(c)] = h.basis()(row, c);
            system = vstack(system, target.act(g, id) - id);
            rhs = vstack(rhs, Matrix(field, target.size(), 1));
        }
        auto x = solve(system, rhs);
        if (!x)
            throw Error(ErrorKind::LiftFailed, degree_text(degree) + ": no fixed-point lift for a non-free part");
        images[k] = std::move(*x);
    }
    if (!free_cols.empty())
    {
        Matrix rhs(field, y.rows(), static_cast<Index>(free_cols.size()));
        for (std::size_t t = 0; t < free_cols.size(); ++t)
            rhs.set_block(0, static_cast<Index>(t), y.col(free_cols[t]));
        auto x = solve(d, rhs);
        if (!x)
            throw Error(ErrorKind::LiftFailed, degree_text(degree) + ": boundary does not hit the required images");
        for (std::size_t t = 0; t < free_parts.size(); ++t)
            images[free_parts[t]] = x->col(static_cast<Index>(t));
    }

    // spread each image over its orbit
    Matrix out(field, target.size(), source.size());
    std::vector<bool> seen(source.dim(), false);
    std::vector<Matrix> cols(source.dim());
    std::vector<std::size_t> queue;
    for (std::size_t k = 0; k < parts; ++k)
    {
        const auto start = static_cast<std::size_t>(base[k]);
        cols[start] = images[k];
        seen[start] = true;
        queue.assign(1, start);
        for (std::size_t head = 0; head < queue.size(); ++head)
        {
            const std::size_t z = queue[head];
            for (int i = 0; i < source.rank(); ++i)
            {
                const std::size_t w = source.permutation(i)[z];
                if (seen[w])
                    continue;
                seen[w] = true;
                cols[w] = target.act(i, cols[z]);
                queue.push_back(w);
            }
        }
        for (std::size_t z : queue)
        {
            out.set_block(0, static_cast<Index>(z), cols[z]);
            cols[z] = Matrix();
        }
    }
    return out;
}

Matrix lift_through_hom(const Matrix& d, const Matrix& y, const Module& source, const Module& target, int degree)
{
    const FieldSpec field = source.field();
    const auto basis = hom_space(source, target);
    const Index entries = y.rows() * y.cols();
    Matrix system(field, entries, static_cast<Index>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k)
    {
        const Matrix image = d * basis[k];
        for (Index r = 0; r < image.rows(); ++r)
            for (Index c = 0; c < image.cols(); ++c)
                system.set(r * image.cols() + c, static_cast<Index>(k), image(r, c));
    }
    Matrix rhs(field, entries, 1);
    for (Index r = 0; r < y.rows(); ++r)
        for (Index c = 0; c < y.cols(); ++c)
            rhs.set(r * y.cols() + c, 0, y(r, c));
    auto coeffs = solve(system, rhs);
    if (!coeffs)
        throw Error(ErrorKind::LiftFailed, degree_text(degree) + ": no intertwiner solves the lifting system");
    Matrix x(field, target.size(), source.size());
    for (std::size_t k = 0; k < basis.size(); ++k)
    {
        const int c = (*coeffs)(static_cast<Index>(k), 0);
        if (c != 0)
            x = x + scaled(basis[k], c);
    }
    return x;
}

}   // namespace

ChainMap lift_chain_map(const ModuleMap& f, const Complex& q, const Complex& p, int ell)
{
    if (!q.augmentation || !p.augmentation)
        throw Error(ErrorKind::LiftFailed, "lift needs augmented complexes");
    if (!(q.augmentation->target == f.source) || !(p.augmentation->target == f.target))
        throw Error(ErrorKind::LiftFailed, "complexes do not resolve the source and target of the map");
    if (p.top_degree() > ell)
        throw Error(ErrorKind::LiftFailed, "target resolution is longer than ell");
    if (ell > 0 && !free_up_to(q, std::min(ell, std::max(q.top_degree(), 0))))
        throw Error(ErrorKind::LiftFailed, "source resolution is not free up to degree ell");

    ChainMap out;
    const int last = std::min(ell, q.top_degree());
    for (int j = 0; j <= last; ++j)
    {
        const Matrix y = j == 0 ? f.matrix * q.augmentation->matrix
                                : out.components[static_cast<std::size_t>(j - 1)] * q.d(j);
        const Matrix d = p.boundary(j);
        if (q.tags && q.term(j).has_permutation_form())
            out.components.push_back(lift_through_tag(d, y, q.term(j), q.tag(j), p.term(j), j));
        else
            out.components.push_back(lift_through_hom(d, y, q.term(j), p.term(j), j));
    }

    if (auto why = chain_map_violation(q, p, out, f.matrix))
        throw Error(ErrorKind::LiftFailed, "lifted map fails the chain-map identity: " + *why);
    return out;
}

// -------------------------------------------------------------- truncate --

Complex truncate(const Complex& c)
{
    if (!is_resolution(c))
        throw Error(ErrorKind::NotResolution, "truncate needs a certified resolution");
    const FieldSpec field = c.group.field();
    const Module c0 = c.term(0);
    Submodule k = kernel(ModuleMap(c0, c.augmentation->target, c.augmentation->matrix));

    Complex out;
    out.group = c.group;
    for (int j = 1; j <= c.top_degree(); ++j)
        out.terms.push_back(c.terms[static_cast<std::size_t>(j)]);
    for (int j = 2; j <= c.top_degree(); ++j)
        out.differentials.push_back(c.differentials[static_cast<std::size_t>(j - 1)]);

    Matrix eps(field, k.module.size(), static_cast<Index>(c.term_dim(1)));
    if (c.top_degree() >= 1)
    {
        auto corestricted = solve(k.incl.matrix, c.d(1));
        if (!corestricted)
            throw Error(ErrorKind::InternalError, "image of d_1 is not inside the kernel of the augmentation");
        eps = std::move(*corestricted);
    }
    out.augmentation = Augmentation{k.module, std::move(eps)};
    if (c.tags)
        out.tags = std::vector<PermutationTag>(c.tags->begin() + std::min<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(c.tags->size())),
                                               c.tags->end());
    check_shape(out);
    return out;
}

Complex reaugment(const Complex& c, const ModuleMap& q)
{
    if (!c.augmentation || !(c.augmentation->target == q.source))
        throw Error(ErrorKind::DimensionMismatch, "reaugment: map does not start at the augmentation target");
    Complex out = c;
    out.augmentation = Augmentation{q.target, q.matrix * c.augmentation->matrix};
    return out;
}

}   // namespace permres
