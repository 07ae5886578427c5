#include "permres/resolution.hpp"

#include <algorithm>

namespace permres
{

namespace
{

TaggedModule trivial_tagged(const GroupSpec& group)
{
    return realize(PermutationDescriptor(group, {Subgroup::whole(group)}));
}

Matrix ones(const FieldSpec& field, Index rows, Index cols)
{
    Matrix out(field, rows, cols);
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c)
            out.set(r, c, 1);
    return out;
}

}   // namespace

// -------------------------------------------------------- periodic pieces --

int periodic_length(int m)
{
    const int ell = m + 1;
    return std::max(2, ell % 2 == 0 ? ell : ell + 1);
}

Complex periodic_complex(const GroupSpec& group, int i, int ell)
{
    if (ell < 2 || ell % 2 != 0)
        throw Error(ErrorKind::OddLength, "periodic complex needs an even length >= 2, got " + std::to_string(ell));
    if (i < 1 || i > group.rank())
        throw Error(ErrorKind::InvalidInput, "coordinate index out of range");
    const FieldSpec field = group.field();
    const TaggedModule coset = realize(PermutationDescriptor(group, {Subgroup::coordinate_hyperplane(group, i)}));
    const TaggedModule k = trivial_tagged(group);
    const Index p = coset.module.size();

    const Matrix id = Matrix::identity(field, p);
    const Matrix shift_minus_one = coset.module.generator(i - 1) - id;
    const Matrix norm = ones(field, p, p);

    Complex c;
    c.group = group;
    std::vector<PermutationTag> tags;
    for (int j = 0; j < ell; ++j)
    {
        c.terms.push_back(coset.module);
        tags.push_back(coset.tag);
    }
    c.terms.push_back(k.module);
    tags.push_back(k.tag);
    for (int j = 1; j < ell; ++j)
        c.differentials.push_back(j % 2 == 1 ? shift_minus_one : norm);
    c.differentials.push_back(ones(field, p, 1));
    c.augmentation = Augmentation{k.module, ones(field, 1, p)};
    c.tags = std::move(tags);
    check_shape(c);
    return c;
}

GoodResolution trivial_resolution(const GroupSpec& group, int m)
{
    if (m < 0)
        throw Error(ErrorKind::InvalidInput, "trivial_resolution needs m >= 0");
    const int ell = periodic_length(m);
    Complex c = periodic_complex(group, 1, ell);
    for (int i = 2; i <= group.rank(); ++i)
        c = tensor_complexes(c, periodic_complex(group, i, ell));
    return {std::move(c), m};
}

// --------------------------------------------------------------- rotation --

Rotation rotate(const ShortExactSequence& ses)
{
    const Module& l = ses.incl.source;
    const Module& m = ses.incl.target;
    const Module& n = ses.proj.target;

    HellerLoop loop = omega(n);
    const ProjectiveCover& cover = loop.cover;
    const FieldSpec field = m.field();
    const std::size_t order = m.group().order();

    Matrix generator_images(field, n.size(), static_cast<Index>(cover.rank));
    for (std::size_t b = 0; b < cover.rank; ++b)
        generator_images.set_block(0, static_cast<Index>(b), cover.pi.matrix.col(static_cast<Index>(b * order)));
    auto preimages = solve(ses.proj.matrix, generator_images);
    if (!preimages)
        throw Error(ErrorKind::InvalidInput, "rotate: quotient map is not surjective");
    ModuleMap phi = free_map(cover.free, m, *preimages);

    DirectSum middle = direct_sum(l, cover.free);
    const Matrix onto = hstack(ses.incl.matrix, phi.matrix);

    // q |-> (-phi~(q), q), where incl . phi~ = phi on Omega N
    auto corestricted = solve(ses.incl.matrix, phi.matrix * loop.incl.matrix);
    if (!corestricted)
        throw Error(ErrorKind::InternalError, "rotate: phi does not land in L on the kernel of the cover");
    const Matrix into = vstack(-*corestricted, loop.incl.matrix);

    Rotation out{ShortExactSequence{ModuleMap(loop.module, middle.module, into), ModuleMap(middle.module, m, onto)},
                 cover, loop, std::move(phi), middle};
    if (auto why = ses_violation(out.ses))
        throw Error(ErrorKind::InternalError, "rotated sequence is not exact: " + *why);
    return out;
}

// ---------------------------------------------------------------- splicing --

namespace
{

Complex splice_unchecked(const Complex& res_l, const Complex& res_m, const ModuleMap& f, const ModuleMap& q)
{
    const int ell = std::max(res_m.top_degree(), 0);
    const ChainMap lift = lift_chain_map(f, res_l, res_m, ell);
    Complex c = cone(res_l, res_m, lift);
    const Matrix eps_m = res_m.augmentation ? res_m.augmentation->matrix
                                            : Matrix(q.source.field(), q.source.size(), 0);
    Matrix eps(q.target.field(), q.target.size(), static_cast<Index>(c.term_dim(0)));
    if (c.term_dim(0) > 0)
        eps.set_block(0, static_cast<Index>(res_l.term_dim(-1)), q.matrix * eps_m);
    c.augmentation = Augmentation{q.target, std::move(eps)};
    check_shape(c);
    return c;
}

}   // namespace

Complex splice(const Complex& res_l, const Complex& res_m, const ModuleMap& f, const ModuleMap& q)
{
    if (!f.injective())
        throw Error(ErrorKind::InvalidInput, "splice needs an injective map");
    Complex c = splice_unchecked(res_l, res_m, f, q);
    if (!is_resolution(c))
        throw Error(ErrorKind::InternalError, "spliced complex is not a resolution");
    return c;
}

// ------------------------------------------------------------- top level --

GoodResolution good_resolution(const Module& m, int degree)
{
    if (degree < 0)
        throw Error(ErrorKind::InvalidInput, "good_resolution needs m >= 0");
    const GroupSpec& group = m.group();
    const FieldSpec field = group.field();

    if (m.dim() == 0)
    {
        Complex c;
        c.group = group;
        c.augmentation = Augmentation{m, Matrix(field, 0, 0)};
        c.tags = std::vector<PermutationTag>{};
        return {std::move(c), degree};
    }

    if (free_rank(m) * group.order() == m.dim())
    {
        ProjectiveCover cover = projective_cover(m);
        TaggedModule term = recognize(cover.free);
        return {single_term_complex(term, Augmentation{m, cover.pi.matrix}), degree};
    }

    const CompositionSeries series = composition_series(m);
    Complex r = trivial_resolution(group, degree).complex;
    r = reaugment(r, ModuleMap(r.augmentation->target, series.terms[1], Matrix::identity(field, 1)));

    for (std::size_t i = 1; i < series.inclusions.size(); ++i)
    {
        const ShortExactSequence ses = ses_from_flag(series.inclusions[i]);
        const Rotation rot = rotate(ses);

        const TaggedModule p = recognize(rot.cover.free);
        const Complex free_term =
            single_term_complex(p, Augmentation{rot.cover.free, Matrix::identity(field, rot.cover.free.size())});
        Complex res_mid = direct_sum_complexes(r, free_term);
        res_mid.augmentation->target = rot.middle.module;

        const int ell = res_mid.top_degree();
        const Complex res_omega = truncate(trivial_resolution(group, std::max(degree, ell) + 1).complex);
        if (!(res_omega.augmentation->target == rot.loop.module))
            throw Error(ErrorKind::InternalError, "truncated resolution does not resolve the rotated loop");

        r = splice_unchecked(res_omega, res_mid, rot.ses.incl, rot.ses.proj);
    }
    return {std::move(r), degree};
}

// ------------------------------------------------------------------- trim --

Complex trim(const Complex& res, const ModuleMap& to_m, const ModuleMap& to_q)
{
    if (!res.augmentation || !res.tags || res.empty())
    {
        if (to_q.target.dim() == 0 && res.augmentation)
            return reaugment(res, to_m);
        throw Error(ErrorKind::SelectionFailed, "trim needs an augmented, tagged resolution");
    }
    const FieldSpec field = res.group.field();
    const std::size_t order = res.group.order();
    const std::size_t q_dim = to_q.target.dim();
    if (q_dim % order != 0)
        throw Error(ErrorKind::SelectionFailed, "removed summand is not free");
    const std::size_t t = q_dim / order;

    const PermutationTag& tag0 = res.tag(0);
    const Matrix& eps = res.augmentation->matrix;
    const Matrix onto_q = to_q.matrix * eps;

    std::vector<std::vector<Index>> part_columns(tag0.descriptor.parts().size());
    for (std::size_t x = 0; x < tag0.basis_map.size(); ++x)
        part_columns[tag0.basis_map[x].part].push_back(static_cast<Index>(x));

    auto gather = [&](const Matrix& a, const std::vector<Index>& cols) {
        Matrix out(field, a.rows(), static_cast<Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c)
            out.set_block(0, static_cast<Index>(c), a.col(cols[c]));
        return out;
    };

    // free parts whose images stay independent, in tag order
    std::vector<std::uint32_t> chosen;
    std::vector<Index> chosen_cols;
    for (std::uint32_t k = 0; k < part_columns.size() && chosen.size() < t; ++k)
    {
        if (tag0.descriptor.parts()[k].dim() != 0)
            continue;
        std::vector<Index> trial = chosen_cols;
        trial.insert(trial.end(), part_columns[k].begin(), part_columns[k].end());
        if (rank(gather(onto_q, trial)) == static_cast<Index>(trial.size()))
        {
            chosen.push_back(k);
            chosen_cols = std::move(trial);
        }
    }
    if (chosen.size() != t)
        throw Error(ErrorKind::SelectionFailed, "degree 0 has no free summand mapping onto the removed part");

    std::vector<std::uint32_t> kept;
    std::vector<Index> kept_cols;
    for (std::uint32_t k = 0; k < part_columns.size(); ++k)
    {
        if (std::find(chosen.begin(), chosen.end(), k) != chosen.end())
            continue;
        kept.push_back(k);
    }
    for (std::size_t x = 0; x < tag0.basis_map.size(); ++x)
    {
        if (std::find(chosen.begin(), chosen.end(), tag0.basis_map[x].part) == chosen.end())
            kept_cols.push_back(static_cast<Index>(x));
    }

    const Matrix onto_m = to_m.matrix * eps;
    auto alpha_inv = inverse(gather(onto_q, chosen_cols));
    if (!alpha_inv)
        throw Error(ErrorKind::SelectionFailed, "selected summand does not map isomorphically");
    const Matrix new_eps = gather(onto_m, kept_cols) - gather(onto_m, chosen_cols) * (*alpha_inv * gather(onto_q, kept_cols));

    Complex out = res;
    PermutationTag new_tag = tag_restrict(tag0, kept);
    out.terms[0] = module_from_tag(new_tag);
    (*out.tags)[0] = std::move(new_tag);
    if (res.top_degree() >= 1)
    {
        const Matrix& d1 = res.differentials[0];
        Matrix rows(field, static_cast<Index>(kept_cols.size()), d1.cols());
        for (std::size_t r = 0; r < kept_cols.size(); ++r)
            rows.set_block(static_cast<Index>(r), 0, d1.row(kept_cols[r]));
        out.differentials[0] = std::move(rows);
    }
    out.augmentation = Augmentation{to_m.target, new_eps};
    check_shape(out);
    return out;
}

// ----------------------------------------------------------- certificates --

Submodule syzygy(const Complex& c, int j)
{
    if (j < 1)
        throw Error(ErrorKind::InvalidInput, "syzygy index must be >= 1");
    const Module source = c.term(j - 1);
    const Module target = j == 1 && c.augmentation ? c.augmentation->target : c.term(j - 2);
    return kernel(ModuleMap(source, target, c.boundary(j - 1)));
}

Certificate certify(const Complex& c, std::optional<int> m)
{
    Certificate cert;
    auto record = [&](std::string name, std::optional<std::string> failure) {
        Check check{std::move(name), !failure, failure.value_or("")};
        if (!check.ok && cert.pass)
        {
            cert.pass = false;
            cert.first_failure = check.name + ": " + check.detail;
        }
        cert.checks.push_back(std::move(check));
    };

    try
    {
        check_shape(c);
    }
    catch (const Error& e)
    {
        record("shape", std::string(e.what()));
        return cert;
    }
    record("shape", std::nullopt);

    if (!c.augmentation)
    {
        record("augmented", std::string("complex has no augmentation"));
        return cert;
    }
    record("augmented", std::nullopt);

    record("d^2 = 0", d_squared_violation(c));
    record("module maps", intertwining_violation(c));

    const HomologyReport h = homology(c);
    cert.homology = h.dims;
    std::optional<std::string> exact;
    if (h.augmentation_defect != 0)
        exact = "augmentation misses " + std::to_string(h.augmentation_defect) + " dimensions of the target";
    for (std::size_t j = 0; j < h.dims.size() && !exact; ++j)
    {
        if (h.dims[j] != 0)
            exact = "degree " + std::to_string(j) + ": dim H = " + std::to_string(h.dims[j]);
    }
    record("exact", exact);

    cert.euler = euler_characteristic(c);
    cert.target_dim = static_cast<long long>(c.augmentation->target.dim());
    record("euler characteristic",
           cert.euler == cert.target_dim ? std::nullopt
                                         : std::optional<std::string>("chi = " + std::to_string(cert.euler)
                                                                      + " but dim target = "
                                                                      + std::to_string(cert.target_dim)));

    std::optional<std::string> tagged;
    if (!c.tags)
        tagged = "terms carry no permutation tags";
    for (int j = 0; c.tags && j <= c.top_degree() && !tagged; ++j)
    {
        if (auto why = tag_violation(c.term(j), c.tag(j)))
            tagged = "degree " + std::to_string(j) + ": " + *why;
    }
    record("tags", tagged);

    cert.free_degree = -1;
    for (int j = 0; j <= c.top_degree(); ++j)
    {
        if (!free_up_to(c, j))
            break;
        cert.free_degree = j;
    }
    if (c.top_degree() >= 0 && cert.free_degree == c.top_degree())
        cert.free_degree = std::max(cert.free_degree, m.value_or(0));
    if (c.empty())
        cert.free_degree = m.value_or(0);
    if (m)
    {
        record("free up to m",
               cert.free_degree >= *m ? std::nullopt
                                      : std::optional<std::string>("degree " + std::to_string(cert.free_degree + 1)
                                                                   + " is not free"));
    }
    return cert;
}

}   // namespace permres
