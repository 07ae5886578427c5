#include "permres/cli.hpp"

#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "permres/io.hpp"
#include "permres/resolution.hpp"

namespace permres
{

namespace
{

void print_certificate(std::ostream& out, const Certificate& cert)
{
    for (const auto& check : cert.checks)
    {
        out << (check.ok ? "  ok    " : "  FAIL  ") << check.name;
        if (!check.ok)
            out << ": " << check.detail;
        out << "\n";
    }
    out << "euler characteristic: " << cert.euler << " (target dim " << cert.target_dim << ")\n";
    out << "free up to degree: " << cert.free_degree << "\n";
    out << "verdict: " << (cert.pass ? "PASS" : "FAIL") << "\n";
}

void emit(std::ostream& out, const std::optional<std::string>& path, const std::string& text)
{
    if (path)
        write_file(*path, text);
    else
        out << text;
}

int exit_code_for(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::InvalidInput:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::GroupMismatch:
        case ErrorKind::NotPermutationBasis:
        case ErrorKind::OddLength:
            return ExitInvalidInput;
        case ErrorKind::CapExceeded:
            return ExitCapExceeded;
        default:
            return ExitInternal;
    }
}

}   // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Permutation resolutions of modules over elementary abelian p-groups", "permres"};
    app.require_subcommand(1);

    RunConfig config;
    app.add_option("--cap-dim", config.caps.max_dim, "Largest module dimension allowed")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--cap-order", config.caps.max_order, "Largest group order allowed")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--seed", config.seed, "Seed for randomized steps")->capture_default_str();
    app.add_option("--trials", config.trials, "Random trials for isomorphism probes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    std::string out_path;
    app.add_option("--out", out_path, "Output file (standard output when omitted)");

    std::string input;
    std::string second;
    int m = 0;
    std::optional<int> verify_m;
    int n = 1;
    int p = 2;
    int r = 1;
    std::size_t dim = 1;

    auto* build = app.add_subcommand("build", "Build a certified good permutation resolution");
    build->add_option("module", input, "Module file")->required();
    build->add_option("--m", m, "Freeness degree")->check(CLI::NonNegativeNumber)->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Recertify a complex file");
    verify->add_option("complex", input, "Complex file")->required();
    verify->add_option("--m", verify_m, "Freeness degree (defaults to the file's)");

    auto* omega_cmd = app.add_subcommand("omega", "Iterated Heller loop");
    omega_cmd->add_option("module", input, "Module file")->required();
    omega_cmd->add_option("--n", n, "Number of loops")->check(CLI::NonNegativeNumber)->capture_default_str();

    auto* tensor_cmd = app.add_subcommand("tensor", "Tensor product of two permutation descriptors");
    tensor_cmd->add_option("first", input, "Descriptor file")->required();
    tensor_cmd->add_option("second", second, "Descriptor file")->required();

    auto* random_cmd = app.add_subcommand("random", "Seeded random module");
    random_cmd->add_option("--p", p, "Prime")->required();
    random_cmd->add_option("--r", r, "Rank of the group")->required();
    random_cmd->add_option("--dim", dim, "Module dimension")->required();

    auto* info = app.add_subcommand("info", "Summarize a module, descriptor or complex file");
    info->add_option("file", input, "Input file")->required();

    auto* trim_cmd = app.add_subcommand("trim", "Remove free summands of the resolved module");
    trim_cmd->add_option("complex", input, "Complex file")->required();

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp& e)
    {
        out << app.help();
        return ExitPass;
    }
    catch (const CLI::ParseError& e)
    {
        err << "error: " << e.what() << "\n";
        return ExitInvalidInput;
    }

    const std::optional<std::string> out_file =
        out_path.empty() ? std::nullopt : std::optional<std::string>(out_path);

    try
    {
        if (*build)
        {
            const Module module = parse_module(read_file(input), config.caps);
            const GoodResolution res = good_resolution(module, m);
            const Certificate cert = certify(res.complex, m);
            if (out_file)
                write_file(*out_file, serialize_complex(res.complex, m));
            out << complex_info(res.complex, m);
            print_certificate(out, cert);
            return cert.pass ? ExitPass : ExitInternal;
        }
        if (*verify)
        {
            const ComplexFile file = parse_complex(read_file(input), config.caps);
            const std::optional<int> degree = verify_m ? verify_m : file.m;
            if (!file.digest.empty() && file.digest != complex_digest(file.complex, file.m))
                out << "warning: stored digest does not match the contents\n";
            const Certificate cert = certify(file.complex, degree);
            print_certificate(out, cert);
            return cert.pass ? ExitPass : ExitFail;
        }
        if (*omega_cmd)
        {
            const Module module = parse_module(read_file(input), config.caps);
            const Module loop = omega_power(module, n);
            emit(out, out_file, serialize_module(loop));
            err << "omega^" << n << ": dim " << loop.dim() << ", free rank " << free_rank(loop) << "\n";
            if (loop.dim() == module.dim())
            {
                const IsoProbe probe = iso_probe(loop, module, config.trials, config.seed);
                const char* verdict = probe.verdict == IsoVerdict::Isomorphic      ? "Iso"
                                      : probe.verdict == IsoVerdict::NotIsomorphic ? "NotIso"
                                                                                   : "Inconclusive";
                err << "compared with input: " << verdict << "\n";
            }
            return ExitPass;
        }
        if (*tensor_cmd)
        {
            const PermutationDescriptor a = parse_descriptor(read_file(input), config.caps);
            const PermutationDescriptor b = parse_descriptor(read_file(second), config.caps);
            require_same_group(a.group(), b.group(), "tensor");
            const PermutationDescriptor result = tensor_descriptor(a, b);
            a.group().check_dim(descriptor_dim(result), "tensor product");
            emit(out, out_file, serialize_descriptor(result));
            return ExitPass;
        }
        if (*random_cmd)
        {
            if (p < 2 || p > 46337 || !is_prime(p))
                throw Error(ErrorKind::InvalidInput, "--p must be a prime");
            if (r < 1)
                throw Error(ErrorKind::InvalidInput, "--r must be positive");
            const GroupSpec group(FieldSpec(p), r, config.caps);
            group.check_dim(dim * group.order(), "random module ambient");
            emit(out, out_file, serialize_module(random_module(group, dim, config.seed)));
            return ExitPass;
        }
        if (*info)
        {
            const std::string text = read_file(input);
            switch (detect_kind(text))
            {
                case FileKind::Module:
                    out << module_info(parse_module(text, config.caps));
                    break;
                case FileKind::Descriptor:
                    out << descriptor_info(parse_descriptor(text, config.caps));
                    break;
                case FileKind::Complex:
                {
                    const ComplexFile file = parse_complex(text, config.caps);
                    out << complex_info(file.complex, file.m);
                    break;
                }
            }
            return ExitPass;
        }
        if (*trim_cmd)
        {
            const ComplexFile file = parse_complex(read_file(input), config.caps);
            if (!file.complex.augmentation)
                throw Error(ErrorKind::InvalidInput, "trim needs an augmented complex");
            const FreeSplitting split = strip_free(file.complex.augmentation->target);
            const DirectSum sum = direct_sum(split.stripped, split.free);
            const ModuleMap to_m = compose(sum.proj1, split.to_sum);
            const ModuleMap to_q = compose(sum.proj2, split.to_sum);
            const Complex trimmed = trim(file.complex, to_m, to_q);
            const Certificate cert = certify(trimmed, file.m);
            emit(out, out_file, serialize_complex(trimmed, file.m));
            err << "removed free rank " << split.free_rank << "\n";
            print_certificate(err, cert);
            return cert.pass ? ExitPass : ExitInternal;
        }
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    catch (const std::exception& e)
    {
        err << "internal error: " << e.what() << "\n";
        return ExitInternal;
    }
    return ExitInternal;
}

}   // namespace permres
