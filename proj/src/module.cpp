#include "permres/module.hpp"

#include <random>

namespace permres
{

namespace
{

Matrix minus_identity(const Matrix& a)
{
    return a - Matrix::identity(a.field(), a.rows());
}

std::vector<std::size_t> translation_table(const GroupSpec& group, int i)
{
    std::vector<std::size_t> table(group.order());
    for (std::size_t n = 0; n < group.order(); ++n)
    {
        GroupElement g = group.element(n);
        g[static_cast<std::size_t>(i)] = group.field().reduce(g[static_cast<std::size_t>(i)] + 1);
        table[n] = group.element_index(g);
    }
    return table;
}

Matrix norm_matrix(const Module& m)
{
    Matrix norm = Matrix::identity(m.field(), m.size());
    for (int i = 0; i < m.rank(); ++i)
    {
        const Matrix a = m.generator(i);
        Matrix sum(m.field(), m.size(), m.size());
        Matrix pw = Matrix::identity(m.field(), m.size());
        for (int k = 0; k < m.group().p(); ++k)
        {
            sum = sum + pw;
            pw = pw * a;
        }
        norm = norm * sum;
    }
    return norm;
}

}   // namespace

// ---------------------------------------------------------------- Module --

Module::Module(GroupSpec group, std::vector<Matrix> generators) : group_(std::move(group))
{
    if (static_cast<int>(generators.size()) != group_.rank())
        throw Error(ErrorKind::DimensionMismatch,
                    "module needs " + std::to_string(group_.rank()) + " generators, got "
                        + std::to_string(generators.size()));
    dim_ = generators.empty() ? 0 : static_cast<std::size_t>(generators.front().rows());
    for (const auto& a : generators)
    {
        if (!(a.field() == group_.field()))
            throw Error(ErrorKind::GroupMismatch, "generator over the wrong field");
        if (static_cast<std::size_t>(a.rows()) != dim_ || static_cast<std::size_t>(a.cols()) != dim_)
            throw Error(ErrorKind::DimensionMismatch, "generators must be square of equal size");
    }
    group_.check_dim(dim_, "module");
    auto data = std::make_shared<Data>();
    data->dense = std::move(generators);
    if (dim_ == 0)
    {
        data->dense.clear();
        data->perms.assign(static_cast<std::size_t>(group_.rank()), Permutation{});
    }
    data_ = std::move(data);
}

Module Module::zero(const GroupSpec& group)
{
    return from_permutations(group, 0, std::vector<Permutation>(static_cast<std::size_t>(group.rank())));
}

Module Module::from_permutations(GroupSpec group, std::size_t dim, std::vector<Permutation> generators)
{
    if (static_cast<int>(generators.size()) != group.rank())
        throw Error(ErrorKind::DimensionMismatch, "wrong number of permutation generators");
    group.check_dim(dim, "module");
    for (const auto& perm : generators)
    {
        if (perm.size() != dim)
            throw Error(ErrorKind::DimensionMismatch, "permutation of the wrong length");
        std::vector<bool> hit(dim, false);
        for (auto v : perm)
        {
            if (v >= dim || hit[v])
                throw Error(ErrorKind::InvalidInput, "not a permutation");
            hit[v] = true;
        }
    }
    Module m;
    m.group_ = std::move(group);
    m.dim_ = dim;
    auto data = std::make_shared<Data>();
    data->perms = std::move(generators);
    m.data_ = std::move(data);
    return m;
}

Matrix Module::generator(int i) const
{
    if (!has_permutation_form())
        return data_->dense.at(static_cast<std::size_t>(i));
    Matrix a(field(), size(), size());
    const auto& perm = data_->perms.at(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < dim_; ++j)
        a.set(static_cast<Index>(perm[j]), static_cast<Index>(j), 1);
    return a;
}

std::vector<Matrix> Module::generators() const
{
    std::vector<Matrix> out;
    for (int i = 0; i < rank(); ++i)
        out.push_back(generator(i));
    return out;
}

const Permutation& Module::permutation(int i) const
{
    if (!has_permutation_form())
        throw Error(ErrorKind::InternalError, "module has no permutation form");
    return data_->perms.at(static_cast<std::size_t>(i));
}

Matrix Module::act(int i, const Matrix& x) const
{
    if (x.rows() != size())
        throw Error(ErrorKind::DimensionMismatch, "act: vector length differs from module dimension");
    if (!has_permutation_form())
        return data_->dense.at(static_cast<std::size_t>(i)) * x;
    Matrix out(x.field(), x.rows(), x.cols());
    const auto& perm = data_->perms.at(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < dim_; ++j)
        out.raw().row(static_cast<Index>(perm[j])) = x.entries().row(static_cast<Index>(j));
    return out;
}

Matrix Module::act_right(const Matrix& x, int i) const
{
    if (x.cols() != size())
        throw Error(ErrorKind::DimensionMismatch, "act_right: width differs from module dimension");
    if (!has_permutation_form())
        return x * data_->dense.at(static_cast<std::size_t>(i));
    Matrix out(x.field(), x.rows(), x.cols());
    const auto& perm = data_->perms.at(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < dim_; ++j)
        out.raw().col(static_cast<Index>(j)) = x.entries().col(static_cast<Index>(perm[j]));
    return out;
}

Matrix Module::act(const GroupElement& g, const Matrix& x) const
{
    Matrix y = x;
    for (int i = 0; i < rank(); ++i)
    {
        const int times = field().reduce(g[static_cast<std::size_t>(i)]);
        for (int k = 0; k < times; ++k)
            y = act(i, y);
    }
    return y;
}

bool operator==(const Module& a, const Module& b)
{
    if (!(a.group_ == b.group_) || a.dim_ != b.dim_)
        return false;
    if (a.dim_ == 0)
        return true;
    if (a.has_permutation_form() && b.has_permutation_form())
        return a.data_->perms == b.data_->perms;
    for (int i = 0; i < a.rank(); ++i)
    {
        if (!(a.generator(i) == b.generator(i)))
            return false;
    }
    return true;
}

// ------------------------------------------------------------- ModuleMap --

ModuleMap::ModuleMap(Module source_, Module target_, Matrix matrix_)
    : source(std::move(source_)), target(std::move(target_)), matrix(std::move(matrix_))
{
    require_same_group(source.group(), target.group(), "module map");
    if (matrix.rows() != target.size() || matrix.cols() != source.size())
        throw Error(ErrorKind::DimensionMismatch,
                    "module map matrix is " + std::to_string(matrix.rows()) + "x" + std::to_string(matrix.cols())
                        + ", expected " + std::to_string(target.dim()) + "x" + std::to_string(source.dim()));
}

bool ModuleMap::intertwines() const
{
    for (int i = 0; i < source.rank(); ++i)
    {
        if (!(source.act_right(matrix, i) == target.act(i, matrix)))
            return false;
    }
    return true;
}

ModuleMap identity_map(const Module& m)
{
    return ModuleMap(m, m, Matrix::identity(m.field(), m.size()));
}

ModuleMap zero_map(const Module& source, const Module& target)
{
    return ModuleMap(source, target, Matrix(source.field(), target.size(), source.size()));
}

ModuleMap compose(const ModuleMap& outer, const ModuleMap& inner)
{
    if (!(outer.source == inner.target))
        throw Error(ErrorKind::DimensionMismatch, "compose: modules do not match");
    return ModuleMap(inner.source, outer.target, outer.matrix * inner.matrix);
}

std::optional<std::string> ses_violation(const ShortExactSequence& ses)
{
    if (!(ses.incl.target == ses.proj.source))
        return "middle modules differ";
    if (!ses.incl.intertwines())
        return "inclusion is not a module map";
    if (!ses.proj.intertwines())
        return "projection is not a module map";
    const Index ri = rank(ses.incl.matrix);
    const Index rp = rank(ses.proj.matrix);
    if (ri != ses.incl.source.size())
        return "inclusion not injective";
    if (rp != ses.proj.target.size())
        return "projection not surjective";
    if (!(ses.proj.matrix * ses.incl.matrix).is_zero())
        return "proj . incl != 0";
    if (ri + rp != ses.incl.target.size())
        return "rank(incl) + rank(proj) != dim M";
    return std::nullopt;
}

// --------------------------------------------------------------- validate --

ValidationReport validate(const Module& m)
{
    ValidationReport report;
    const int r = m.rank();
    const int p = m.group().p();
    if (m.has_permutation_form())
    {
        for (int i = 0; i < r; ++i)
        {
            const auto& perm = m.permutation(i);
            for (std::size_t j = 0; j < perm.size(); ++j)
            {
                std::size_t k = j;
                for (int t = 0; t < p; ++t)
                    k = perm[k];
                if (k != j)
                    return {false, "order", i + 1, 0, "order i=" + std::to_string(i + 1) + ": A_i^p != I"};
            }
        }
        for (int i = 0; i < r; ++i)
        {
            for (int j = i + 1; j < r; ++j)
            {
                const auto& a = m.permutation(i);
                const auto& b = m.permutation(j);
                for (std::size_t k = 0; k < a.size(); ++k)
                {
                    if (a[b[k]] != b[a[k]])
                        return {false, "commutativity", i + 1, j + 1,
                                "commutativity i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1)};
                }
            }
        }
        return report;
    }

    const auto gens = m.generators();
    for (int i = 0; i < r; ++i)
    {
        if (!power(gens[static_cast<std::size_t>(i)], p).is_identity())
            return {false, "order", i + 1, 0, "order i=" + std::to_string(i + 1) + ": A_i^p != I"};
    }
    for (int i = 0; i < r; ++i)
    {
        for (int j = i + 1; j < r; ++j)
        {
            const auto& a = gens[static_cast<std::size_t>(i)];
            const auto& b = gens[static_cast<std::size_t>(j)];
            if (!(a * b == b * a))
                return {false, "commutativity", i + 1, j + 1,
                        "commutativity i=" + std::to_string(i + 1) + " j=" + std::to_string(j + 1)};
        }
    }
    return report;
}

// ---------------------------------------------------------- constructors --

Module make_trivial(const GroupSpec& group, std::size_t n)
{
    Permutation id(n);
    for (std::size_t j = 0; j < n; ++j)
        id[j] = static_cast<std::uint32_t>(j);
    return Module::from_permutations(group, n, std::vector<Permutation>(static_cast<std::size_t>(group.rank()), id));
}

Module make_free(const GroupSpec& group, std::size_t t)
{
    const std::size_t order = group.order();
    group.check_dim(t * order, "free module");
    std::vector<Permutation> gens;
    for (int i = 0; i < group.rank(); ++i)
    {
        const auto table = translation_table(group, i);
        Permutation perm(t * order);
        for (std::size_t b = 0; b < t; ++b)
            for (std::size_t n = 0; n < order; ++n)
                perm[b * order + n] = static_cast<std::uint32_t>(b * order + table[n]);
        gens.push_back(std::move(perm));
    }
    return Module::from_permutations(group, t * order, std::move(gens));
}

ModuleMap free_map(const Module& free, const Module& target, const Matrix& images)
{
    const GroupSpec& group = free.group();
    const std::size_t order = group.order();
    const std::size_t t = static_cast<std::size_t>(images.cols());
    if (free.dim() != t * order || images.rows() != target.size())
        throw Error(ErrorKind::DimensionMismatch, "free_map: images do not match the free module");
    Matrix out(target.field(), target.size(), free.size());
    for (std::size_t b = 0; b < t; ++b)
    {
        std::vector<Matrix> cols(order);
        cols[0] = images.col(static_cast<Index>(b));
        for (std::size_t n = 1; n < order; ++n)
        {
            GroupElement g = group.element(n);
            int last = group.rank() - 1;
            while (g[static_cast<std::size_t>(last)] == 0)
                --last;
            g[static_cast<std::size_t>(last)] -= 1;
            cols[n] = target.act(last, cols[group.element_index(g)]);
        }
        for (std::size_t n = 0; n < order; ++n)
            out.set_block(0, static_cast<Index>(b * order + n), cols[n]);
    }
    return ModuleMap(free, target, std::move(out));
}

Module restrict_action(const Module& m, const Matrix& basis)
{
    std::vector<Matrix> gens;
    for (int i = 0; i < m.rank(); ++i)
    {
        auto x = solve(basis, m.act(i, basis));
        if (!x)
            throw Error(ErrorKind::InternalError, "subspace is not invariant under generator " + std::to_string(i + 1));
        gens.push_back(std::move(*x));
    }
    if (basis.cols() == 0)
        return Module::zero(m.group());
    return Module(m.group(), std::move(gens));
}

Submodule submodule(const Module& m, const Matrix& basis)
{
    Module sub = restrict_action(m, basis);
    ModuleMap incl(sub, m, basis);
    return {std::move(sub), std::move(incl)};
}

Submodule radical(const Module& m)
{
    Matrix stacked(m.field(), m.size(), 0);
    for (int i = 0; i < m.rank(); ++i)
        stacked = hstack(stacked, minus_identity(m.generator(i)));
    return submodule(m, column_basis(stacked));
}

Quotient quotient(const Module& m, const ModuleMap& incl)
{
    if (incl.target.dim() != m.dim())
        throw Error(ErrorKind::DimensionMismatch, "quotient: inclusion does not land in the module");
    const auto r = rref(incl.matrix.transpose());
    if (r.rank != incl.source.size())
        throw Error(ErrorKind::NotInjective, "quotient: inclusion is not injective");

    std::vector<bool> is_pivot(m.dim(), false);
    for (Index c : r.pivots)
        is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<Index> complement;
    for (Index c = 0; c < m.size(); ++c)
        if (!is_pivot[static_cast<std::size_t>(c)])
            complement.push_back(c);

    const FieldSpec field = m.field();
    const Index q = static_cast<Index>(complement.size());
    Matrix proj(field, q, m.size());
    Matrix lift(field, m.size(), q);
    for (Index j = 0; j < q; ++j)
    {
        const Index c = complement[static_cast<std::size_t>(j)];
        proj.set(j, c, 1);
        lift.set(c, j, 1);
        for (Index k = 0; k < r.rank; ++k)
            proj.set(j, r.pivots[static_cast<std::size_t>(k)], field.negate(r.reduced(k, c)));
    }

    Module qmod = Module::zero(m.group());
    if (q > 0)
    {
        std::vector<Matrix> gens;
        for (int i = 0; i < m.rank(); ++i)
            gens.push_back(proj * m.act(i, lift));
        qmod = Module(m.group(), std::move(gens));
    }
    ModuleMap pmap(m, qmod, proj);
    return {std::move(qmod), std::move(pmap), std::move(lift)};
}

Submodule kernel(const ModuleMap& f)
{
    return submodule(f.source, nullspace(f.matrix));
}

DirectSum direct_sum(const Module& m, const Module& n)
{
    require_same_group(m.group(), n.group(), "direct sum");
    const std::size_t dm = m.dim();
    const std::size_t dn = n.dim();
    m.group().check_dim(dm + dn, "direct sum");

    Module sum;
    if (m.has_permutation_form() && n.has_permutation_form())
    {
        std::vector<Permutation> gens;
        for (int i = 0; i < m.rank(); ++i)
        {
            Permutation perm(m.permutation(i));
            for (auto v : n.permutation(i))
                perm.push_back(static_cast<std::uint32_t>(v + dm));
            gens.push_back(std::move(perm));
        }
        sum = Module::from_permutations(m.group(), dm + dn, std::move(gens));
    }
    else
    {
        std::vector<Matrix> gens;
        for (int i = 0; i < m.rank(); ++i)
            gens.push_back(block_diagonal(m.generator(i), n.generator(i)));
        sum = Module(m.group(), std::move(gens));
    }

    const FieldSpec f = m.field();
    const Index a = m.size();
    const Index b = n.size();
    Matrix i1(f, a + b, a), i2(f, a + b, b), p1(f, a, a + b), p2(f, b, a + b);
    i1.set_block(0, 0, Matrix::identity(f, a));
    i2.set_block(a, 0, Matrix::identity(f, b));
    p1.set_block(0, 0, Matrix::identity(f, a));
    p2.set_block(0, a, Matrix::identity(f, b));
    return {sum, ModuleMap(m, sum, i1), ModuleMap(n, sum, i2), ModuleMap(sum, m, p1), ModuleMap(sum, n, p2)};
}

Module tensor(const Module& m, const Module& n)
{
    require_same_group(m.group(), n.group(), "tensor");
    const std::size_t dm = m.dim();
    const std::size_t dn = n.dim();
    m.group().check_dim(dm * dn, "tensor product");
    if (dm * dn == 0)
        return Module::zero(m.group());
    if (m.has_permutation_form() && n.has_permutation_form())
    {
        std::vector<Permutation> gens;
        for (int i = 0; i < m.rank(); ++i)
        {
            const auto& s = m.permutation(i);
            const auto& t = n.permutation(i);
            Permutation perm(dm * dn);
            for (std::size_t a = 0; a < dm; ++a)
                for (std::size_t b = 0; b < dn; ++b)
                    perm[a * dn + b] = static_cast<std::uint32_t>(s[a] * dn + t[b]);
            gens.push_back(std::move(perm));
        }
        return Module::from_permutations(m.group(), dm * dn, std::move(gens));
    }
    std::vector<Matrix> gens;
    for (int i = 0; i < m.rank(); ++i)
        gens.push_back(kron(m.generator(i), n.generator(i)));
    return Module(m.group(), std::move(gens));
}

Module dual(const Module& m)
{
    // (P^{-1})^T = P for permutation matrices
    if (m.has_permutation_form())
        return m;
    std::vector<Matrix> gens;
    for (int i = 0; i < m.rank(); ++i)
        gens.push_back(power(m.generator(i), m.group().p() - 1).transpose());
    return Module(m.group(), std::move(gens));
}

std::vector<Matrix> hom_space(const Module& m, const Module& n)
{
    require_same_group(m.group(), n.group(), "hom_space");
    const Index dm = m.size();
    const Index dn = n.size();
    const Index unknowns = dm * dn;
    const FieldSpec f = m.field();
    const int r = m.rank();

    // X A_i - B_i X = 0, unknown X[a][b] at a * dm + b
    Matrix system(f, r * unknowns, unknowns);
    for (int i = 0; i < r; ++i)
    {
        const Matrix a = m.generator(i);
        const Matrix b = n.generator(i);
        const Index base = i * unknowns;
        for (Index row = 0; row < dn; ++row)
        {
            for (Index c = 0; c < dm; ++c)
            {
                const Index eq = base + row * dm + c;
                for (Index k = 0; k < dm; ++k)
                {
                    if (a(k, c) != 0)
                        system.set(eq, row * dm + k, system(eq, row * dm + k) + a(k, c));
                }
                for (Index e = 0; e < dn; ++e)
                {
                    if (b(row, e) != 0)
                        system.set(eq, e * dm + c, system(eq, e * dm + c) - b(row, e));
                }
            }
        }
    }

    const Matrix null = nullspace(system);
    std::vector<Matrix> basis;
    for (Index k = 0; k < null.cols(); ++k)
    {
        Matrix x(f, dn, dm);
        for (Index row = 0; row < dn; ++row)
            for (Index c = 0; c < dm; ++c)
                x.set(row, c, null(row * dm + c, k));
        basis.push_back(std::move(x));
    }
    return basis;
}

// ----------------------------------------------------- composition series --

CompositionSeries composition_series(const Module& m)
{
    const FieldSpec f = m.field();
    // radical series as subspaces of M
    std::vector<Matrix> layers{Matrix::identity(f, m.size())};
    Module current = m;
    while (current.dim() > 0)
    {
        Submodule rad = radical(current);
        if (rad.module.dim() == current.dim())
            throw Error(ErrorKind::InternalError, "radical did not shrink; module is not a p-group module");
        layers.push_back(layers.back() * rad.incl.matrix);
        current = rad.module;
    }

    Matrix flag(f, m.size(), 0);
    for (std::size_t j = layers.size(); j-- > 0;)
    {
        const Matrix& layer = layers[j];
        for (Index c = 0; c < layer.cols(); ++c)
        {
            Matrix candidate = hstack(flag, layer.col(c));
            if (rank(candidate) > flag.cols())
                flag = std::move(candidate);
        }
    }

    CompositionSeries series;
    series.flag_basis = flag;
    const Index s = m.size();
    series.terms.push_back(Module::zero(m.group()));
    for (Index i = 1; i < s; ++i)
        series.terms.push_back(restrict_action(m, flag.block(0, 0, s, i)));
    if (s > 0)
        series.terms.push_back(m);

    for (Index i = 1; i <= s; ++i)
    {
        Matrix incl(f, i, i - 1);
        if (i < s)
            incl.set_block(0, 0, Matrix::identity(f, i - 1));
        else
            incl = flag.block(0, 0, s, s - 1);
        series.inclusions.emplace_back(series.terms[static_cast<std::size_t>(i - 1)],
                                       series.terms[static_cast<std::size_t>(i)], std::move(incl));
    }
    return series;
}

// ------------------------------------------------- covers and Heller loops --

ProjectiveCover projective_cover(const Module& m)
{
    Submodule rad = radical(m);
    Quotient top = quotient(m, rad.incl);
    const std::size_t t = top.module.dim();
    Module free = make_free(m.group(), t);
    ModuleMap pi = free_map(free, m, top.lift);
    if (!pi.surjective())
        throw Error(ErrorKind::InternalError, "projective cover is not surjective");
    return {std::move(free), t, std::move(pi)};
}

HellerLoop omega(const Module& m)
{
    ProjectiveCover cover = projective_cover(m);
    Submodule k = kernel(cover.pi);
    return {std::move(k.module), std::move(k.incl), std::move(cover)};
}

Module omega_power(const Module& m, int n)
{
    Module current = m;
    for (int k = 0; k < n; ++k)
        current = omega(current).module;
    return current;
}

std::size_t free_rank(const Module& m)
{
    if (m.dim() == 0)
        return 0;
    return static_cast<std::size_t>(rank(norm_matrix(m)));
}

FreeSplitting strip_free(const Module& m)
{
    const GroupSpec& group = m.group();
    const FieldSpec f = m.field();
    const Module kE = make_free(group, 1);
    const Index order = static_cast<Index>(group.order());

    Module current = m;
    Matrix basis = Matrix::identity(f, m.size());   // current's basis in M's coordinates
    std::vector<Matrix> free_blocks;
    while (current.dim() > 0)
    {
        const Matrix norm = norm_matrix(current);
        Index j = 0;
        while (j < norm.cols() && norm.col(j).is_zero())
            ++j;
        if (j == norm.cols())
            break;

        Matrix v(f, current.size(), 1);
        v.set(j, 0, 1);
        const ModuleMap incl_w = free_map(kE, current, v);
        if (rank(incl_w.matrix) != order)
            throw Error(ErrorKind::InternalError, "strip_free: cyclic submodule is not free");

        // Retraction rho : current -> kE with rho(x)_g = lambda(g^{-1} x); rho . incl_w = id
        Matrix target(f, order, 1);
        target.set(0, 0, 1);
        auto lambda_t = solve(incl_w.matrix.transpose(), target);
        if (!lambda_t)
            throw Error(ErrorKind::InternalError, "strip_free: no retraction found");
        const Matrix lambda = lambda_t->transpose();
        Matrix rho(f, order, current.size());
        for (Index n = 0; n < order; ++n)
        {
            const GroupElement g = group.element(static_cast<std::size_t>(n));
            Matrix row = lambda;
            for (int i = 0; i < group.rank(); ++i)
            {
                const int times = f.negate(g[static_cast<std::size_t>(i)]);
                for (int k = 0; k < times; ++k)
                    row = current.act_right(row, i);
            }
            rho.set_block(n, 0, row);
        }
        ModuleMap retraction(current, kE, rho);
        if (!retraction.intertwines() || !(rho * incl_w.matrix).is_identity())
            throw Error(ErrorKind::InternalError, "strip_free: retraction check failed");

        Submodule rest = kernel(retraction);
        free_blocks.push_back(basis * incl_w.matrix);
        basis = basis * rest.incl.matrix;
        current = rest.module;
    }

    const std::size_t t = free_blocks.size();
    Matrix from = basis;
    for (const auto& block : free_blocks)
        from = hstack(from, block);
    auto to = inverse(from);
    if (!to)
        throw Error(ErrorKind::InternalError, "strip_free: splitting is not invertible");

    Module free = make_free(group, t);
    DirectSum sum = direct_sum(current, free);
    FreeSplitting out;
    out.stripped = current;
    out.free_rank = t;
    out.free = free;
    out.to_sum = ModuleMap(m, sum.module, *to);
    out.from_sum = ModuleMap(sum.module, m, from);
    return out;
}

// --------------------------------------------------------------- iso probe --

IsoProbe iso_probe(const Module& m, const Module& n, int trials, std::uint64_t seed)
{
    if (!(m.group() == n.group()))
        return {IsoVerdict::NotIsomorphic, std::nullopt, "different groups"};
    if (m.dim() != n.dim())
        return {IsoVerdict::NotIsomorphic, std::nullopt, "dimensions differ"};
    if (m.dim() == 0)
        return {IsoVerdict::Isomorphic, identity_map(m), "both zero"};

    const auto hmn = hom_space(m, n);
    const auto hnm = hom_space(n, m);
    if (hmn.size() != hnm.size())
        return {IsoVerdict::NotIsomorphic, std::nullopt, "dim Hom(M,N) != dim Hom(N,M)"};
    if (hmn.empty())
        return {IsoVerdict::NotIsomorphic, std::nullopt, "no nonzero homomorphisms"};

    const FieldSpec f = m.field();
    const int p = f.p();
    auto combine = [&](const std::vector<int>& coeffs) {
        Matrix x(f, n.size(), m.size());
        for (std::size_t k = 0; k < hmn.size(); ++k)
            if (coeffs[k] != 0)
                x = x + scaled(hmn[k], coeffs[k]);
        return x;
    };

    // exhaustive when |Hom| <= 16
    std::size_t total = 1;
    bool small = true;
    for (std::size_t k = 0; k < hmn.size() && small; ++k)
    {
        total *= static_cast<std::size_t>(p);
        small = total <= 16;
    }
    if (small)
    {
        std::vector<int> coeffs(hmn.size(), 0);
        for (std::size_t code = 1; code < total; ++code)
        {
            std::size_t rest = code;
            for (auto& c : coeffs)
            {
                c = static_cast<int>(rest % static_cast<std::size_t>(p));
                rest /= static_cast<std::size_t>(p);
            }
            Matrix x = combine(coeffs);
            if (rank(x) == x.rows())
                return {IsoVerdict::Isomorphic, ModuleMap(m, n, x), "exhaustive search"};
        }
        return {IsoVerdict::NotIsomorphic, std::nullopt, "no invertible homomorphism (exhaustive)"};
    }

    std::mt19937_64 rng(seed);
    std::vector<int> coeffs(hmn.size(), 0);
    for (int trial = 0; trial < trials; ++trial)
    {
        for (auto& c : coeffs)
            c = static_cast<int>(rng() % static_cast<std::uint64_t>(p));
        Matrix x = combine(coeffs);
        if (rank(x) == x.rows())
            return {IsoVerdict::Isomorphic, ModuleMap(m, n, x), "random combination"};
    }
    return {IsoVerdict::Inconclusive, std::nullopt, "no invertible combination in " + std::to_string(trials) + " trials"};
}

ShortExactSequence ses_from_flag(const ModuleMap& incl)
{
    Quotient q = quotient(incl.target, incl);
    ShortExactSequence ses{incl, q.proj};
    if (auto why = ses_violation(ses))
        throw Error(ErrorKind::InternalError, "flag step does not give a short exact sequence: " + *why);
    return ses;
}

}   // namespace permres
