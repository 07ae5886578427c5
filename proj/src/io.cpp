#include "permres/io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace permres
{

using nlohmann::json;

namespace
{

[[noreturn]] void bad(const std::string& what)
{
    throw Error(ErrorKind::InvalidInput, what);
}

json parse_json(const std::string& text)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

std::string canonical(const json& doc)
{
    return doc.dump() + "\n";
}

const json& field_of(const json& obj, const char* key)
{
    if (!obj.is_object() || !obj.contains(key))
        bad(std::string("missing field \"") + key + "\"");
    return obj.at(key);
}

long long integer(const json& v, const char* what)
{
    if (!v.is_number_integer())
        bad(std::string(what) + " must be an integer");
    return v.get<long long>();
}

int entry(const json& v, const FieldSpec& field)
{
    const long long x = integer(v, "matrix entry");
    if (x < 0 || x >= field.p())
        bad("matrix entry " + std::to_string(x) + " outside 0.." + std::to_string(field.p() - 1));
    return static_cast<int>(x);
}

json dense_json(const Matrix& a)
{
    json rows = json::array();
    for (Index r = 0; r < a.rows(); ++r)
    {
        json row = json::array();
        for (Index c = 0; c < a.cols(); ++c)
            row.push_back(a(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix dense_from_json(const json& rows, const FieldSpec& field, Index n_rows, Index n_cols)
{
    if (!rows.is_array() || static_cast<Index>(rows.size()) != n_rows)
        bad("matrix must have " + std::to_string(n_rows) + " rows");
    Matrix out(field, n_rows, n_cols);
    for (Index r = 0; r < n_rows; ++r)
    {
        const json& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n_cols)
            bad("matrix row " + std::to_string(r) + " must have " + std::to_string(n_cols) + " entries");
        for (Index c = 0; c < n_cols; ++c)
            out.set(r, c, entry(row[static_cast<std::size_t>(c)], field));
    }
    return out;
}

json sparse_json(const Matrix& a)
{
    json entries = json::array();
    for (Index r = 0; r < a.rows(); ++r)
        for (Index c = 0; c < a.cols(); ++c)
            if (a(r, c) != 0)
                entries.push_back(json::array({r, c, a(r, c)}));
    return json{{"cols", a.cols()}, {"entries", std::move(entries)}, {"rows", a.rows()}};
}

Matrix sparse_from_json(const json& obj, const FieldSpec& field, Index n_rows, Index n_cols)
{
    if (integer(field_of(obj, "rows"), "rows") != n_rows || integer(field_of(obj, "cols"), "cols") != n_cols)
        bad("matrix must be " + std::to_string(n_rows) + "x" + std::to_string(n_cols));
    Matrix out(field, n_rows, n_cols);
    for (const json& e : field_of(obj, "entries"))
    {
        if (!e.is_array() || e.size() != 3)
            bad("sparse entry must be [row, col, value]");
        const long long r = integer(e[0], "row index");
        const long long c = integer(e[1], "column index");
        if (r < 0 || r >= n_rows || c < 0 || c >= n_cols)
            bad("sparse entry index out of range");
        out.set(static_cast<Index>(r), static_cast<Index>(c), entry(e[2], field));
    }
    return out;
}

GroupSpec group_from_json(const json& doc, const Caps& caps)
{
    const long long p = integer(field_of(doc, "p"), "p");
    const long long r = integer(field_of(doc, "rank"), "rank");
    if (p < 2 || p > 46337 || !is_prime(p))
        bad("p must be a prime below 46338, got " + std::to_string(p));
    if (r < 1 || r > 64)
        bad("rank must be positive");
    return GroupSpec(FieldSpec(static_cast<int>(p)), static_cast<int>(r), caps);
}

json module_body(const Module& m)
{
    json gens = json::array();
    for (int i = 0; i < m.rank(); ++i)
        gens.push_back(dense_json(m.generator(i)));
    return json{{"dim", m.dim()}, {"generators", std::move(gens)}};
}

Module module_from_body(const json& body, const GroupSpec& group)
{
    const long long dim = integer(field_of(body, "dim"), "dim");
    if (dim < 0)
        bad("dim must be non-negative");
    group.check_dim(static_cast<std::size_t>(dim), "module file");
    const json& gens = field_of(body, "generators");
    if (!gens.is_array() || static_cast<int>(gens.size()) != group.rank())
        bad("expected " + std::to_string(group.rank()) + " generators");
    std::vector<Matrix> mats;
    for (const json& g : gens)
        mats.push_back(dense_from_json(g, group.field(), static_cast<Index>(dim), static_cast<Index>(dim)));
    Module m(group, std::move(mats));
    const ValidationReport report = validate(m);
    if (!report.ok)
        bad(report.message);
    return m;
}

json subgroup_json(const Subgroup& h)
{
    return dense_json(h.basis());
}

Subgroup subgroup_from_json(const json& rows, const GroupSpec& group)
{
    if (!rows.is_array())
        bad("subgroup must be a list of rows");
    return Subgroup(group, dense_from_json(rows, group.field(), static_cast<Index>(rows.size()), group.rank()));
}

json parts_json(const PermutationDescriptor& d)
{
    json parts = json::array();
    for (const auto& h : d.parts())
        parts.push_back(subgroup_json(h));
    return parts;
}

std::vector<Subgroup> parts_from_json(const json& parts, const GroupSpec& group)
{
    if (!parts.is_array())
        bad("parts must be a list");
    std::vector<Subgroup> out;
    for (const json& rows : parts)
        out.push_back(subgroup_from_json(rows, group));
    return out;
}

json tag_json(const PermutationTag& tag)
{
    json labels = json::array();
    for (const auto& label : tag.basis_map)
        labels.push_back(json::array({label.part, label.rep}));
    return json{{"basis_map", std::move(labels)}, {"parts", parts_json(tag.descriptor)}};
}

PermutationTag tag_from_json(const json& obj, const GroupSpec& group)
{
    PermutationTag tag;
    tag.descriptor = PermutationDescriptor(group, parts_from_json(field_of(obj, "parts"), group));
    // parts must already be in canonical order for the labels to mean anything
    const auto given = parts_from_json(field_of(obj, "parts"), group);
    if (!(given == tag.descriptor.parts()))
        bad("tag parts must be sorted");
    for (const json& label : field_of(obj, "basis_map"))
    {
        if (!label.is_array() || label.size() != 2 || !label[1].is_array()
            || static_cast<int>(label[1].size()) != group.rank())
            bad("basis label must be [part, representative]");
        const long long part = integer(label[0], "part index");
        if (part < 0 || part >= static_cast<long long>(given.size()))
            bad("basis label part out of range");
        GroupElement rep;
        for (const json& x : label[1])
            rep.push_back(entry(x, group.field()));
        tag.basis_map.push_back({static_cast<std::uint32_t>(part), std::move(rep)});
    }
    return tag;
}

json complex_json(const Complex& c, std::optional<int> m, const std::string& digest)
{
    json terms = json::array();
    for (int j = 0; j <= c.top_degree(); ++j)
    {
        if (c.tags && module_from_tag(c.tag(j)) == c.term(j))
            terms.push_back(json{{"realization", "tag"}});
        else
            terms.push_back(json{{"module", module_body(c.term(j))}, {"realization", "module"}});
    }
    json diffs = json::array();
    for (const auto& d : c.differentials)
        diffs.push_back(sparse_json(d));

    json doc{{"differentials", std::move(diffs)},
             {"kind", "complex"},
             {"p", c.group.p()},
             {"rank", c.group.rank()},
             {"terms", std::move(terms)}};
    if (c.augmentation)
        doc["augmentation"] = json{{"matrix", sparse_json(c.augmentation->matrix)},
                                   {"target", module_body(c.augmentation->target)}};
    if (c.tags)
    {
        json tags = json::array();
        for (const auto& t : *c.tags)
            tags.push_back(tag_json(t));
        doc["tags"] = std::move(tags);
    }
    json meta{{"digest", digest}};
    if (m)
        meta["m"] = *m;
    doc["meta"] = std::move(meta);
    return doc;
}

std::string fnv1a(const std::string& text)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text)
    {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}   // namespace

// ----------------------------------------------------------------- files --

std::string serialize_module(const Module& m)
{
    json doc = module_body(m);
    doc["kind"] = "module";
    doc["p"] = m.group().p();
    doc["rank"] = m.rank();
    return canonical(doc);
}

Module parse_module(const std::string& text, const Caps& caps)
{
    const json doc = parse_json(text);
    return module_from_body(doc, group_from_json(doc, caps));
}

std::string serialize_descriptor(const PermutationDescriptor& d)
{
    return canonical(json{{"kind", "descriptor"}, {"p", d.group().p()}, {"parts", parts_json(d)}, {"rank", d.group().rank()}});
}

PermutationDescriptor parse_descriptor(const std::string& text, const Caps& caps)
{
    const json doc = parse_json(text);
    const GroupSpec group = group_from_json(doc, caps);
    return PermutationDescriptor(group, parts_from_json(field_of(doc, "parts"), group));
}

std::string complex_digest(const Complex& c, std::optional<int> m)
{
    return fnv1a(canonical(complex_json(c, m, "")));
}

std::string serialize_complex(const Complex& c, std::optional<int> m)
{
    return canonical(complex_json(c, m, complex_digest(c, m)));
}

ComplexFile parse_complex(const std::string& text, const Caps& caps)
{
    const json doc = parse_json(text);
    ComplexFile out;
    Complex& c = out.complex;
    c.group = group_from_json(doc, caps);
    const FieldSpec field = c.group.field();

    if (doc.contains("tags"))
    {
        std::vector<PermutationTag> tags;
        for (const json& t : doc.at("tags"))
            tags.push_back(tag_from_json(t, c.group));
        c.tags = std::move(tags);
    }
    const json& terms = field_of(doc, "terms");
    if (!terms.is_array())
        bad("terms must be a list");
    for (std::size_t j = 0; j < terms.size(); ++j)
    {
        const std::string how = field_of(terms[j], "realization").get<std::string>();
        if (how == "tag")
        {
            if (!c.tags || j >= c.tags->size())
                bad("term " + std::to_string(j) + " is realized by a missing tag");
            c.group.check_dim(descriptor_dim((*c.tags)[j].descriptor), "complex term");
            try
            {
                c.terms.push_back(module_from_tag((*c.tags)[j]));
            }
            catch (const Error& e)
            {
                bad("term " + std::to_string(j) + ": " + e.what());
            }
        }
        else if (how == "module")
        {
            c.terms.push_back(module_from_body(field_of(terms[j], "module"), c.group));
        }
        else
        {
            bad("unknown realization \"" + how + "\"");
        }
    }
    const json& diffs = field_of(doc, "differentials");
    if (!diffs.is_array() || diffs.size() != (terms.empty() ? 0 : terms.size() - 1))
        bad("expected one differential per degree 1..n");
    for (std::size_t j = 1; j <= diffs.size(); ++j)
        c.differentials.push_back(sparse_from_json(diffs[j - 1], field, c.terms[j - 1].size(), c.terms[j].size()));
    if (doc.contains("augmentation"))
    {
        const json& aug = doc.at("augmentation");
        Module target = module_from_body(field_of(aug, "target"), c.group);
        Matrix matrix = sparse_from_json(field_of(aug, "matrix"), field, target.size(),
                                         c.terms.empty() ? 0 : c.terms[0].size());
        c.augmentation = Augmentation{std::move(target), std::move(matrix)};
    }
    if (doc.contains("meta"))
    {
        const json& meta = doc.at("meta");
        if (meta.contains("m"))
            out.m = static_cast<int>(integer(meta.at("m"), "m"));
        if (meta.contains("digest") && meta.at("digest").is_string())
            out.digest = meta.at("digest").get<std::string>();
    }
    try
    {
        check_shape(c);
    }
    catch (const Error& e)
    {
        bad(e.what());
    }
    return out;
}

FileKind detect_kind(const std::string& text)
{
    const json doc = parse_json(text);
    if (!doc.is_object())
        bad("expected a JSON object");
    if (doc.contains("kind") && doc.at("kind").is_string())
    {
        const std::string kind = doc.at("kind").get<std::string>();
        if (kind == "module")
            return FileKind::Module;
        if (kind == "descriptor")
            return FileKind::Descriptor;
        if (kind == "complex")
            return FileKind::Complex;
        bad("unknown kind \"" + kind + "\"");
    }
    if (doc.contains("terms"))
        return FileKind::Complex;
    if (doc.contains("parts"))
        return FileKind::Descriptor;
    return FileKind::Module;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        bad("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        bad("cannot write " + path);
}

// ---------------------------------------------------------------- random --

Module random_module(const GroupSpec& group, std::size_t dim, std::uint64_t seed)
{
    const FieldSpec field = group.field();
    if (dim == 0)
        return Module::zero(group);
    const std::size_t order = group.order();
    group.check_dim(dim * order, "random module ambient");

    for (std::uint64_t attempt = 0; attempt < 1000; ++attempt)
    {
        std::mt19937_64 rng(seed + attempt);
        auto draw = [&](std::uint64_t bound) { return static_cast<int>(rng() % bound); };

        // the ambient rank bounds the socle, so small ranks give deeper modules
        std::size_t t = 1 + static_cast<std::size_t>(draw(dim));
        while (t * order < dim)
            ++t;
        const Module free = make_free(group, t);
        const Index n = free.size();
        const auto gens = free.generators();

        auto closure = [&](const Matrix& vectors) {
            Matrix basis = column_basis(vectors);
            for (;;)
            {
                Matrix grown = basis;
                for (int i = 0; i < group.rank(); ++i)
                    grown = hstack(grown, gens[static_cast<std::size_t>(i)] * basis);
                Matrix next = column_basis(grown);
                if (next.cols() == basis.cols())
                    return next;
                basis = std::move(next);
            }
        };

        Matrix span(field, n, 0);
        int stalls = 0;
        while (static_cast<std::size_t>(span.cols()) < dim && stalls < 100)
        {
            Matrix v(field, n, 1);
            for (Index r = 0; r < n; ++r)
                v.set(r, 0, draw(static_cast<std::uint64_t>(field.p())));
            for (int i = 0; i < group.rank(); ++i)
            {
                const int e = draw(static_cast<std::uint64_t>(field.p()));
                const Matrix step = gens[static_cast<std::size_t>(i)] - Matrix::identity(field, n);
                for (int k = 0; k < e; ++k)
                    v = step * v;
            }
            Matrix grown = closure(hstack(span, v));
            if (grown.cols() > span.cols() && static_cast<std::size_t>(grown.cols()) <= dim)
            {
                span = std::move(grown);
                stalls = 0;
            }
            else
            {
                ++stalls;
            }
        }
        if (static_cast<std::size_t>(span.cols()) == dim)
            return restrict_action(free, span);
    }
    throw Error(ErrorKind::InternalError, "random_module found no submodule of the requested dimension");
}

// ------------------------------------------------------------------ info --

std::string module_info(const Module& m)
{
    std::ostringstream os;
    os << "module over (C_" << m.group().p() << ")^" << m.rank() << "\n";
    os << "dim: " << m.dim() << "\n";
    const ValidationReport report = validate(m);
    os << "valid: " << (report.ok ? "yes" : report.message) << "\n";
    if (!report.ok)
        return os.str();
    os << "free rank: " << free_rank(m) << "\n";
    os << "radical series dims:";
    Module layer = m;
    int loewy = 0;
    os << " " << layer.dim();
    while (layer.dim() > 0)
    {
        layer = radical(layer).module;
        os << " " << layer.dim();
        ++loewy;
    }
    os << "\nloewy length: " << loewy << "\n";
    return os.str();
}

std::string descriptor_info(const PermutationDescriptor& d)
{
    std::ostringstream os;
    os << "permutation descriptor over (C_" << d.group().p() << ")^" << d.group().rank() << "\n";
    os << "parts: " << d.parts().size() << "\n";
    for (const auto& h : d.parts())
        os << "  k(E/H), H = " << to_string(h) << ", index " << h.index() << "\n";
    os << "dim: " << descriptor_dim(d) << "\n";
    os << "free: " << (is_free_descriptor(d) ? "yes" : "no") << "\n";
    return os.str();
}

std::string complex_info(const Complex& c, std::optional<int> m)
{
    std::ostringstream os;
    os << "complex over (C_" << c.group.p() << ")^" << c.group.rank() << "\n";
    os << "top degree: " << c.top_degree() << "\n";
    if (m)
        os << "requested m: " << *m << "\n";
    if (c.augmentation)
        os << "augmentation target dim: " << c.augmentation->target.dim() << "\n";
    os << "euler characteristic: " << euler_characteristic(c) << "\n";
    os << "degree  dim  free parts  other parts\n";
    for (int j = 0; j <= c.top_degree(); ++j)
    {
        os << j << "  " << c.term_dim(j);
        if (c.tags)
        {
            std::size_t free_parts = 0;
            for (const auto& h : c.tag(j).descriptor.parts())
                free_parts += h.dim() == 0 ? 1 : 0;
            os << "  " << free_parts << "  " << c.tag(j).descriptor.parts().size() - free_parts;
        }
        os << "\n";
    }
    return os.str();
}

}   // namespace permres
