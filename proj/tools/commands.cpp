#include "commands.hpp"

#include <chrono>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "matrix_io.hpp"

#include "anyon/lattice_realization.hpp"
#include "anyon/symmetry.hpp"
#include "anyon/wall_synthesis.hpp"

namespace anyon::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::int64_t kAutLimit = 4096;
constexpr std::int64_t kQTableLimit = 256;

struct Options {
    std::string format = "structured";
    std::int64_t budget = 1'000'000;
    std::size_t rank_limit = kDefaultGlueRankLimit;
    std::string out_path;
};

struct Report {
    explicit Report(std::string name = "") : command(std::move(name)) {}

    std::string command;
    Json data = Json::object();
    std::vector<Check> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    void add_checks(const VerificationReport& rep) {
        for (const auto& c : rep.checks) checks.push_back(c);
    }
};

std::string rational_text(const Rational& q) { return to_string(q); }

Rational mod_one(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    Rational r = q - Rational(f);
    r.canonicalize();
    return r;
}

Json matrix_json(const IntegerMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) {
            if (m(i, k).fits_slong_p()) row.push_back(m(i, k).get_si());
            else row.push_back(m(i, k).get_str());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json group_json(const MetricGroup& g) {
    Json j = Json::object();
    j["invariant_factors"] = g.invariant_factors();
    j["order"] = g.order();
    return j;
}

void render_plain_value(std::ostream& os, const std::string& key, const Json& v, const std::string& indent) {
    if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
        os << indent << key << ":\n";
        for (const auto& e : v) {
            os << indent << "  -";
            if (e.is_object()) {
                for (const auto& [k, x] : e.items()) os << ' ' << k << '=' << (x.is_string() ? x.get<std::string>() : x.dump());
            } else {
                for (const auto& x : e) os << ' ' << (x.is_string() ? x.get<std::string>() : x.dump());
            }
            os << '\n';
        }
    } else if (v.is_object()) {
        os << indent << key << ":\n";
        for (const auto& [k, x] : v.items()) render_plain_value(os, k, x, indent + "  ");
    } else {
        os << indent << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
}

std::string render_report(const Report& r, FileFormat format) {
    if (format == FileFormat::Structured) {
        Json j = Json::object();
        j["command"] = r.command;
        j["data"] = r.data;
        Json checks = Json::array();
        for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        j["checks"] = std::move(checks);
        j["verdict"] = r.passed() ? "pass" : "fail";
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "command: " << r.command << '\n';
    for (const auto& [k, v] : r.data.items()) render_plain_value(os, k, v, "");
    for (const auto& c : r.checks)
        os << "check " << c.name << ": " << (c.passed ? "pass" : "fail") << " (" << c.detail << ")\n";
    os << "verdict: " << (r.passed() ? "pass" : "fail") << '\n';
    return os.str();
}

int central_charge_sum(const std::vector<PrimeFamilySpec>& specs) {
    int c = 0;
    for (const auto& s : specs) c += central_charge_closed(s);
    return ((c % 8) + 8) % 8;
}

// --------------------------------------------------------------------------

Report cmd_model(const std::string& text, const Options& opt) {
    Report r{"model"};
    const auto specs = parse_model_spec(text);
    const MetricGroup g = build_model(specs);
    r.data["spec"] = to_string(specs);
    r.data["group"] = group_json(g);
    r.data["level"] = g.level();

    const int closed = central_charge_sum(specs);
    const int gauss = central_charge_gauss(g, opt.budget);
    r.data["central_charge"] = Json{{"closed_form", closed}, {"gauss_sum", gauss}};
    r.checks.push_back(Check{"central_charge", closed == gauss,
                             "closed form " + std::to_string(closed) + ", Gauss sum " + std::to_string(gauss)});

    if (g.order() <= std::min(kAutLimit, opt.budget)) {
        const AutGroup aut = aut_bruteforce(g, kAutLimit);
        Json a = Json{{"order", aut.order}, {"abelian", aut.abelian}};
        if (aut.structure_name) a["structure"] = *aut.structure_name;
        if (specs.size() == 1) {
            const AutSummary closed_aut = aut_order_closed(specs.front());
            a["closed_form_order"] = closed_aut.order;
            r.checks.push_back(Check{"automorphism_order", closed_aut.order == aut.order,
                                     "enumerated " + std::to_string(aut.order) + ", closed form " +
                                         std::to_string(closed_aut.order)});
        }
        r.data["automorphisms"] = std::move(a);
    } else {
        r.data["automorphisms"] = "skipped: group larger than " + std::to_string(std::min(kAutLimit, opt.budget));
    }

    if (g.order() <= kQTableLimit) {
        Json table = Json::array();
        g.for_each([&](const Element& x, std::int64_t) {
            table.push_back(Json{{"element", x}, {"q", rational_text(g.q(x))}});
        });
        r.data["q_table"] = std::move(table);
    }
    return r;
}

struct KMatrixResult {
    IntegerMatrix K;
    std::vector<std::string> routes;
};

KMatrixResult synthesize(const std::vector<PrimeFamilySpec>& specs, bool positive, const Options& opt) {
    KMatrixResult res;
    std::vector<IntegerMatrix> blocks;
    for (const auto& s : specs) {
        if (positive) {
            Realization real = positive_definite_realization(s, opt.rank_limit);
            blocks.push_back(real.lattice.gram);
            res.routes.push_back(s.to_string() + ": " + real.route);
            continue;
        }
        if (s.family == Family::E || s.family == Family::F) {
            blocks.push_back(direct_EF_k(s.family, s.r));
            res.routes.push_back(s.to_string() + ": direct");
            continue;
        }
        try {
            const std::int64_t c = choose_c_for_family(s);
            blocks.push_back(k_from_wall(c, s.modulus()));
            res.routes.push_back(s.to_string() + ": Wall algorithm with n = " + std::to_string(c));
        } catch (const SpecialCaseRouting&) {
            Realization real = positive_definite_realization(s, opt.rank_limit);
            blocks.push_back(real.lattice.gram);
            res.routes.push_back(s.to_string() + ": " + real.route);
        }
    }
    res.K = direct_sum(blocks);
    return res;
}

std::string join_routes(const std::vector<std::string>& routes) {
    std::string s;
    for (std::size_t i = 0; i < routes.size(); ++i) s += (i ? "; " : "") + routes[i];
    return s;
}

Report cmd_kmatrix(const std::string& text, bool positive, const Options& opt) {
    Report r{"kmatrix"};
    const auto specs = parse_model_spec(text);
    const MetricGroup target = build_model(specs);
    const KMatrixResult res = synthesize(specs, positive, opt);
    const VerificationReport rep = verify_realization(res.K, target, opt.budget);
    r.data["spec"] = to_string(specs);
    r.data["positive_definite"] = positive;
    r.data["routes"] = res.routes;
    r.data["rank"] = res.K.rows();
    r.data["signature"] = rep.inertia.signature();
    r.data["gram"] = matrix_json(res.K);
    r.add_checks(rep);
    if (!opt.out_path.empty()) {
        MatrixFile f{res.K, to_string(specs), join_routes(res.routes)};
        write_text_file(opt.out_path, render_matrix_file(f, parse_format(opt.format)));
    }
    return r;
}

std::vector<PrimeFamilySpec> target_of(const MatrixFile& f, const std::string& flag) {
    if (!flag.empty()) return parse_model_spec(flag);
    if (f.target) return parse_model_spec(*f.target);
    return {};
}

Report cmd_verify(const std::string& path, const std::string& target_flag, const Options& opt) {
    Report r{"verify"};
    const MatrixFile f = load_matrix_file(path);
    const auto specs = target_of(f, target_flag);
    if (specs.empty()) throw CLI::ValidationError("verify", "no target given and the file has none");
    const VerificationReport rep = verify_realization(f.gram, build_model(specs), opt.budget);
    r.data["target"] = to_string(specs);
    r.data["rank"] = f.gram.rows();
    r.data["determinant"] = determinant(f.gram).get_str();
    r.data["inertia"] = Json{{"positive", rep.inertia.n_plus}, {"negative", rep.inertia.n_minus}};
    r.data["signature"] = rep.inertia.signature();
    r.data["central_charge"] = rep.target_central_charge;
    if (rep.discriminant) r.data["discriminant_group"] = rep.discriminant->invariant_factors();
    r.add_checks(rep);
    return r;
}

Report cmd_complement(const std::string& path, const std::string& target_flag, const Options& opt) {
    Report r{"complement"};
    const MatrixFile f = load_matrix_file(path);
    const Lattice base = Lattice::from_gram(f.gram);
    const SelfDualGluing glue = glue_selfdual_8(base, opt.rank_limit);
    const Lattice comp = orthogonal_complement(glue.lambda, glue.embedded_copy);

    r.checks.push_back(Check{"gluing", glue.lambda.is_even() && abs(determinant(glue.lambda.gram)) == 1,
                             "rank " + std::to_string(glue.lambda.rank()) + ", even, unimodular"});
    r.checks.push_back(Check{"complement_rank", comp.rank() == 7 * base.rank(),
                             "rank " + std::to_string(comp.rank()) + ", base rank " + std::to_string(base.rank())});

    const auto specs = target_of(f, target_flag);
    std::optional<std::string> conj_text;
    MetricGroup target;
    if (!specs.empty()) {
        std::vector<PrimeFamilySpec> conj;
        for (const auto& s : specs) conj.push_back(conjugate_spec(s));
        conj_text = to_string(conj);
        target = build_model(conj);
    } else {
        target = conjugate(discriminant_form(base.gram).to_metric_group());
    }
    const VerificationReport rep = verify_realization(comp.gram, target, opt.budget);
    r.add_checks(rep);
    r.data["base_rank"] = base.rank();
    r.data["gluing_rank"] = glue.lambda.rank();
    r.data["glue_group_order"] = glue.glue.order.get_str();
    if (conj_text) r.data["target"] = *conj_text;
    r.data["rank"] = comp.rank();
    r.data["signature"] = rep.inertia.signature();
    r.data["gram"] = matrix_json(comp.gram);
    if (!opt.out_path.empty()) {
        MatrixFile out{comp.gram, conj_text, "orthogonal complement in an eight-copy self-dual gluing"};
        write_text_file(opt.out_path, render_matrix_file(out, parse_format(opt.format)));
    }
    return r;
}

Report cmd_weights(const std::string& path, const Options& opt) {
    Report r{"weights"};
    const MatrixFile f = load_matrix_file(path);
    const auto weights = coset_minima(f.gram, opt.budget);
    const DiscriminantData disc = discriminant_form(f.gram);
    // q2 of a coset from the generator values: sum c_i^2 q2_i + 2 sum_{i<j} c_i c_j b_ij
    auto q_of = [&](const Element& c) {
        Rational q2 = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            q2 += Rational(c[i] * c[i]) * disc.q2_values[i];
            for (std::size_t j = i + 1; j < c.size(); ++j) q2 += Rational(2 * c[i] * c[j]) * disc.bilinear_values(i, j);
        }
        return mod_one(q2 / 2);
    };
    std::size_t mismatches = 0;
    Json table = Json::array();
    std::optional<Rational> min_h;
    Rational sum = 0;
    for (const auto& w : weights) {
        if (mod_one(w.h) != q_of(w.coset)) ++mismatches;
        table.push_back(Json{{"coset", w.coset}, {"h", rational_text(w.h)}, {"q", rational_text(mod_one(w.h))}});
        if (w.h != 0 && (!min_h || w.h < *min_h)) min_h = w.h;
        sum += w.h;
    }
    r.data["rank"] = f.gram.rows();
    r.data["anyon_types"] = weights.size();
    r.data["weights"] = std::move(table);
    r.data["min_nonzero_h"] = min_h ? rational_text(*min_h) : "none";
    r.data["sum_h"] = rational_text(sum);
    r.data["extremality_score"] = rational_text(extremality_score(f.gram, opt.budget));
    r.checks.push_back(Check{"weights_match_form", mismatches == 0,
                             mismatches == 0 ? "every h_a agrees with q(a) mod 1"
                                             : std::to_string(mismatches) + " cosets disagree with q mod 1"});
    return r;
}

}  // namespace

PrimeFamilySpec conjugate_spec(const PrimeFamilySpec& spec) {
    const MetricGroup conj = conjugate(build_prime(spec));
    const std::vector<Family> families = spec.p == 2
        ? std::vector<Family>{Family::A, Family::B, Family::C, Family::D, Family::E, Family::F}
        : std::vector<Family>{Family::A, Family::B};
    for (Family f : families) {
        PrimeFamilySpec cand{f, spec.p, spec.r, 0};
        try {
            validate(cand);
        } catch (const InvalidArgument&) {
            continue;
        }
        if (is_isomorphic(build_prime(cand), conj, std::max<std::int64_t>(4096, conj.order()))) return cand;
    }
    throw VerificationFailure("no prime model is conjugate to " + spec.to_string());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Abelian anyon models: metric groups, K-matrices and lattice realizations", "anyonkit"};
    app.require_subcommand(1);
    Options opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "Output format: structured or plain")
            ->check(CLI::IsMember({"structured", "plain"}));
        sub->add_option("--budget", opt.budget, "Enumeration budget (group elements)")->check(CLI::PositiveNumber);
        sub->add_option("--out", opt.out_path, "Write the matrix to this file");
    };

    std::string spec_text, file_path, target;
    bool positive = false;

    auto* model = app.add_subcommand("model", "Describe a model: group, q-table, central charge, symmetries");
    model->add_option("spec", spec_text, "Model spec, e.g. \"E[2]*A[2]\"")->required();
    add_common(model);

    auto* kmatrix = app.add_subcommand("kmatrix", "Synthesize a K-matrix for a model");
    kmatrix->add_option("spec", spec_text, "Model spec")->required();
    kmatrix->add_flag("--positive-definite", positive, "Build an even positive-definite lattice");
    kmatrix->add_option("--rank-limit", opt.rank_limit, "Largest rank allowed for eight-copy gluings");
    add_common(kmatrix);

    auto* verify = app.add_subcommand("verify", "Check that a matrix realizes a model");
    verify->add_option("file", file_path, "Matrix file")->required();
    verify->add_option("--target", target, "Model spec (defaults to the file's target)");
    add_common(verify);

    auto* complement = app.add_subcommand("complement", "Complement of a lattice in its eight-copy gluing");
    complement->add_option("file", file_path, "Matrix file")->required();
    complement->add_option("--target", target, "Model realized by the file (defaults to the file's target)");
    complement->add_option("--rank-limit", opt.rank_limit, "Largest rank allowed for the gluing");
    add_common(complement);

    auto* weights = app.add_subcommand("weights", "Conformal weights and extremality score");
    weights->add_option("file", file_path, "Matrix file")->required();
    add_common(weights);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        const FileFormat format = parse_format(opt.format);
        Report report;
        if (*model) report = cmd_model(spec_text, opt);
        else if (*kmatrix) report = cmd_kmatrix(spec_text, positive, opt);
        else if (*verify) report = cmd_verify(file_path, target, opt);
        else if (*complement) report = cmd_complement(file_path, target, opt);
        else report = cmd_weights(file_path, opt);

        const std::string text = render_report(report, format);
        if (!opt.out_path.empty() && (*model || *verify || *weights)) write_text_file(opt.out_path, text);
        out << text;
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        err << "elapsed " << ms.count() << " ms\n";
        return report.passed() ? kPass : kFail;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIoError;
    } catch (const anyon::ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kBudgetExceeded;
    } catch (const InvalidArgument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kDomainError;
    } catch (const VerificationFailure& e) {
        err << "internal verification failure: " << e.what() << "\n";
        return kInternalError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInternalError;
    }
}

}  // namespace anyon::cli
