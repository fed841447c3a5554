// qg: command-line front end for the quasigroup toolkit.
//
// Subcommands: validate, check, classify, isotope, construct, derive,
// word-eq, normalize. Every command takes --json for machine-readable
// output. Exit codes: semantic results use 0/1/2 as documented per command;
// 64 usage error, 65 parse error, 66 file error, 70 budget exceeded.

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include <CLI11.hpp>

#include "qg/classify.hpp"
#include "qg/construct.hpp"
#include "qg/freewords.hpp"
#include "qg/qgio.hpp"
#include "qg/table.hpp"
#include "qg/term.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitFile = 66;
constexpr int kExitBudget = 70;

using nlohmann::json;

struct CliError {
    int code;
    std::string message;
};

qg::QuasigroupTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{kExitFile, "cannot open file: " + path};
    try {
        return qg::read_qg(in, path);
    } catch (const qg::FormatError& e) {
        throw CliError{kExitParse, path + ": " + e.what()};
    } catch (const qg::TableError& e) {
        throw CliError{kExitParse, path + ": " + e.what()};
    }
}

void emit_table(const qg::QuasigroupTable& table, const std::string& out_path) {
    if (out_path.empty()) {
        qg::write_qg(std::cout, table);
    } else {
        std::ofstream out(out_path);
        if (!out) throw CliError{kExitFile, "cannot open file for writing: " + out_path};
        qg::write_qg(out, table);
    }
}

json counterexample_json(const std::vector<std::pair<std::string, qg::Element>>& cex) {
    json arr = json::array();
    for (const auto& [name, value] : cex) arr.push_back({{"var", name}, {"value", value}});
    return arr;
}

std::string counterexample_text(const std::vector<std::pair<std::string, qg::Element>>& cex) {
    std::string out;
    for (const auto& [name, value] : cex) {
        if (!out.empty()) out += ' ';
        out += name + "=" + std::to_string(value);
    }
    return out;
}

qg::Permutation parse_images(const std::string& text, int n, const char* which) {
    std::vector<int> images;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        try {
            images.push_back(std::stoi(part));
        } catch (...) {
            throw CliError{kExitUsage, std::string(which) + ": bad image list '" + text + "'"};
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(images.size()) != n)
        throw CliError{kExitUsage, std::string(which) + ": expected " + std::to_string(n) +
                                       " images, got " + std::to_string(images.size())};
    try {
        return qg::Permutation(images);
    } catch (const std::invalid_argument& e) {
        throw CliError{kExitUsage, std::string(which) + ": " + e.what()};
    }
}

int cmd_validate(const std::string& file, bool as_json) {
    std::ifstream in(file);
    if (!in) throw CliError{kExitFile, "cannot open file: " + file};
    try {
        qg::QuasigroupTable table = qg::read_qg(in, file);
        if (as_json)
            std::cout << json{{"command", "validate"}, {"valid", true}, {"order", table.order()}}
                             .dump()
                      << "\n";
        else
            std::cout << "valid order-" << table.order() << " quasigroup table\n";
        return 0;
    } catch (const std::runtime_error& e) {
        if (as_json)
            std::cout << json{{"command", "validate"}, {"valid", false}, {"error", e.what()}}
                             .dump()
                      << "\n";
        std::cerr << "invalid: " << e.what() << "\n";
        return 2;
    }
}

int cmd_check(const std::string& file, const std::string& identity_text,
              const std::string& named, long long budget, bool as_json) {
    qg::QuasigroupTable table = load_table(file);
    qg::Identity identity = [&] {
        if (!named.empty()) {
            const qg::CatalogEntry* entry = qg::catalog_find(named);
            if (!entry) throw CliError{kExitUsage, "unknown catalog key: " + named};
            return entry->identity;
        }
        try {
            return qg::parse_identity(identity_text);
        } catch (const std::runtime_error& e) {
            throw CliError{kExitParse, e.what()};
        }
    }();
    qg::CheckResult result;
    try {
        result = qg::check_identity(table, identity, budget);
    } catch (const qg::BudgetError& e) {
        throw CliError{kExitBudget, e.what()};
    }
    if (as_json) {
        json j{{"command", "check"},
               {"identity", qg::to_string(identity)},
               {"verdict", result.holds ? "holds" : "fails"}};
        if (!result.holds) j["counterexample"] = counterexample_json(result.counterexample);
        std::cout << j.dump() << "\n";
    } else if (result.holds) {
        std::cout << "holds\n";
    } else {
        std::cout << "fails\ncounterexample: " << counterexample_text(result.counterexample)
                  << "\n";
    }
    return result.holds ? 0 : 1;
}

int cmd_classify(const std::string& file, int max_class, bool decompose, long long budget,
                 bool as_json) {
    qg::QuasigroupTable table = load_table(file);
    qg::ClassifyOptions options;
    options.budget = budget;
    options.max_class = max_class;
    options.decompose = decompose;
    qg::ClassificationReport report = qg::classify(table, options);
    if (as_json) {
        json j = qg::report_to_json(report);
        j["command"] = "classify";
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "order " << report.order << "\n";
    for (const auto& [key, res] : report.entries) {
        std::cout << key << ": ";
        switch (res.verdict) {
            case qg::Verdict::Holds: std::cout << "holds"; break;
            case qg::Verdict::Fails:
                std::cout << "fails  [" << counterexample_text(res.counterexample) << "]";
                break;
            case qg::Verdict::BudgetExceeded: std::cout << "budget exceeded"; break;
        }
        std::cout << "\n";
    }
    std::cout << "oracle: group_isotope=" << (report.oracle.group_isotope ? "yes" : "no")
              << " abelian_isotope=" << (report.oracle.abelian_isotope ? "yes" : "no");
    if (report.oracle.nilpotency_class)
        std::cout << " nilpotency_class=" << *report.oracle.nilpotency_class;
    else if (report.oracle.group_isotope)
        std::cout << " nilpotency_class=none";
    std::cout << "\n";
    for (const auto& [n, res] : report.nilpotent_isotopy)
        std::cout << "nilpotent_isotopy(" << n
                  << "): " << (res.verdict == qg::Verdict::Holds ? "holds" : "fails") << "\n";
    if (report.decompose_attempted) {
        if (report.t_decomposition) {
            const qg::TDecomposition& d = *report.t_decomposition;
            std::cout << "t_decomposition: a=" << d.a << " b=" << d.b << " c=" << d.c << " phi=";
            for (size_t i = 0; i < d.phi.images().size(); ++i)
                std::cout << (i ? "," : "") << d.phi.images()[i];
            std::cout << " psi=";
            for (size_t i = 0; i < d.psi.images().size(); ++i)
                std::cout << (i ? "," : "") << d.psi.images()[i];
            std::cout << "\n";
        } else {
            std::cout << "t_decomposition: none\n";
        }
    }
    std::cout << "consistency: " << (report.consistent ? "true" : "false") << "\n";
    return 0;
}

int cmd_isotope(const std::string& file, int a, int b, const std::string& out_path,
                bool as_json) {
    qg::QuasigroupTable table = load_table(file);
    if (a < 0 || a >= table.order() || b < 0 || b >= table.order())
        throw CliError{kExitUsage, "isotopy parameters must be elements of the table"};
    qg::QuasigroupTable iso = table.principal_isotope(a, b);
    if (as_json) {
        std::cout << json{{"command", "isotope"},
                          {"order", iso.order()},
                          {"identity_element", table.mul(b, a)},
                          {"table", qg::write_qg_string(iso)}}
                         .dump()
                  << "\n";
        return 0;
    }
    emit_table(iso, out_path);
    return 0;
}

int cmd_construct(const std::string& kind, const std::string& group_spec,
                  const std::string& phi_text, const std::string& psi_text, int c,
                  const std::string& form_text, const std::string& out_path, bool as_json) {
    qg::QuasigroupTable group = [&] {
        try {
            return qg::resolve_group(group_spec);
        } catch (const qg::ConstructError& e) {
            throw CliError{kExitUsage, e.what()};
        }
    }();
    const int n = group.order();
    if (c < 0 || c >= n) throw CliError{kExitUsage, "--c out of range"};
    qg::Permutation phi =
        phi_text.empty() ? qg::Permutation::identity(n) : parse_images(phi_text, n, "--phi");
    qg::Permutation psi =
        psi_text.empty() ? qg::Permutation::identity(n) : parse_images(psi_text, n, "--psi");
    qg::LinearForm form = qg::LinearForm::Middle;
    if (form_text == "trailing") form = qg::LinearForm::Trailing;
    else if (!form_text.empty() && form_text != "middle")
        throw CliError{kExitUsage, "--form must be middle or trailing"};

    try {
        qg::QuasigroupTable result = [&] {
            if (kind == "group") return group;
            if (kind == "linear")
                return qg::linear_quasigroup({group, phi, psi, c, form});
            if (kind == "t") return qg::t_quasigroup({group, phi, psi, c, form});
            if (kind == "ch") return qg::ch_quasigroup(group, c);
            if (kind == "leftdist") return qg::left_distributive_quasigroup(group, phi);
            throw CliError{kExitUsage,
                           "unknown construction kind: " + kind +
                               " (expected linear, t, ch, leftdist or group)"};
        }();
        if (as_json) {
            std::cout << json{{"command", "construct"},
                              {"kind", kind},
                              {"group", group_spec},
                              {"order", result.order()},
                              {"table", qg::write_qg_string(result)}}
                             .dump()
                      << "\n";
            return 0;
        }
        emit_table(result, out_path);
        return 0;
    } catch (const qg::ConstructError& e) {
        throw CliError{kExitUsage, e.what()};
    }
}

int cmd_derive(const std::string& loop_identity, bool as_json) {
    try {
        qg::LoopIdentity loop = qg::parse_loop_identity(loop_identity);
        qg::Identity derived = qg::derive_identity(loop);
        if (as_json)
            std::cout << json{{"command", "derive"}, {"identity", qg::to_string(derived)}}.dump()
                      << "\n";
        else
            std::cout << qg::to_string(derived) << "\n";
        return 0;
    } catch (const qg::DeriveError& e) {
        throw CliError{kExitUsage, e.what()};
    } catch (const std::runtime_error& e) {
        throw CliError{kExitParse, e.what()};
    }
}

int cmd_word_eq(const std::string& lhs_text, const std::string& rhs_text, bool medial,
                bool as_json) {
    qg::TermPtr lhs, rhs;
    try {
        lhs = qg::parse_term(lhs_text);
        rhs = qg::parse_term(rhs_text);
    } catch (const std::runtime_error& e) {
        throw CliError{kExitParse, e.what()};
    }
    qg::WordMode mode = medial ? qg::WordMode::Medial : qg::WordMode::FreeT;
    qg::WordsEqualResult result = qg::words_equal(lhs, rhs, mode);
    if (as_json) {
        json j{{"command", "word-eq"},
               {"mode", medial ? "medial" : "free-t"},
               {"equal", result.equal},
               {"lhs_canonical", result.lhs.display()},
               {"rhs_canonical", result.rhs.display()}};
        if (!result.equal) {
            if (result.certificate) {
                const qg::SeparationCertificate& cert = *result.certificate;
                json assignment = json::object();
                for (const auto& [name, value] : cert.assignment) assignment[name] = value;
                j["certificate"] = {{"group", cert.group_name},
                                    {"alpha", cert.alpha.images()},
                                    {"beta", cert.beta.images()},
                                    {"quasigroup", qg::write_qg_string(cert.quasigroup)},
                                    {"assignment", assignment},
                                    {"lhs_value", cert.lhs_value},
                                    {"rhs_value", cert.rhs_value}};
            } else {
                j["certificate"] = nullptr;
            }
        }
        std::cout << j.dump() << "\n";
    } else if (result.equal) {
        std::cout << "equal\n";
    } else {
        std::cout << "unequal\n";
        std::cout << "lhs: " << result.lhs.display() << "\n";
        std::cout << "rhs: " << result.rhs.display() << "\n";
        if (result.certificate) {
            const qg::SeparationCertificate& cert = *result.certificate;
            std::cout << "certificate: T-quasigroup over " << cert.group_name << ", alpha=";
            for (size_t i = 0; i < cert.alpha.images().size(); ++i)
                std::cout << (i ? "," : "") << cert.alpha.images()[i];
            std::cout << " beta=";
            for (size_t i = 0; i < cert.beta.images().size(); ++i)
                std::cout << (i ? "," : "") << cert.beta.images()[i];
            std::cout << "\nassignment:";
            for (const auto& [name, value] : cert.assignment)
                std::cout << " " << name << "=" << value;
            std::cout << "  (lhs=" << cert.lhs_value << ", rhs=" << cert.rhs_value << ")\n";
        } else {
            std::cout << "certificate: none (canonical forms differ)\n";
        }
    }
    return result.equal ? 0 : 1;
}

int cmd_normalize(const std::string& term_text, bool medial, bool as_json) {
    qg::TermPtr term;
    try {
        term = qg::parse_term(term_text);
    } catch (const std::runtime_error& e) {
        throw CliError{kExitParse, e.what()};
    }
    qg::WordMode mode = medial ? qg::WordMode::Medial : qg::WordMode::FreeT;
    qg::CanonicalWord cw = qg::normalize(qg::tau_transfer(term), mode);
    if (as_json)
        std::cout << json{{"command", "normalize"},
                          {"mode", medial ? "medial" : "free-t"},
                          {"canonical", cw.display()}}
                         .dump()
                  << "\n";
    else
        std::cout << cw.display() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite and free quasigroup toolkit"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string file, identity_text, named, out_path;
    long long budget = 100'000'000;
    int max_class = 0, iso_a = 0, iso_b = 0, c_value = 0;
    bool decompose = false, medial = false;
    std::string kind, group_spec, phi_text, psi_text, form_text = "middle";
    std::string term1, term2;

    CLI::App* validate = app.add_subcommand("validate", "validate a .qg table file");
    validate->add_option("file", file)->required();

    CLI::App* check = app.add_subcommand("check", "check an identity on a table");
    check->add_option("file", file)->required();
    CLI::Option* opt_identity = check->add_option("--identity", identity_text, "identity text");
    CLI::Option* opt_named = check->add_option("--named", named, "catalog key");
    opt_identity->excludes(opt_named);
    check->add_option("--budget", budget, "assignment budget");

    CLI::App* classify = app.add_subcommand("classify", "full classification report");
    classify->add_option("file", file)->required();
    classify->add_option("--max-class", max_class, "nilpotency checks up to this class");
    classify->add_flag("--decompose-t", decompose, "attempt T-quasigroup decomposition");
    classify->add_option("--budget", budget, "assignment budget per entry");

    CLI::App* isotope = app.add_subcommand("isotope", "principal isotope table");
    isotope->add_option("file", file)->required();
    isotope->add_option("-a", iso_a)->required();
    isotope->add_option("-b", iso_b)->required();
    isotope->add_option("-o", out_path, "output file (default stdout)");

    CLI::App* construct = app.add_subcommand("construct", "build a classical quasigroup family");
    construct->add_option("kind", kind, "linear | t | ch | leftdist | group")->required();
    construct->add_option("--group", group_spec, "group spec, e.g. Z3, Z2xZ4, S3, D4, Q8")
        ->required();
    construct->add_option("--phi", phi_text, "automorphism images, e.g. 0,2,1");
    construct->add_option("--psi", psi_text, "automorphism images");
    construct->add_option("--c", c_value, "constant element");
    construct->add_option("--form", form_text, "middle | trailing");
    construct->add_option("-o", out_path, "output file (default stdout)");

    CLI::App* derive = app.add_subcommand("derive", "derived identity of a loop identity");
    derive->add_option("identity", term1, "loop identity, e.g. \"x+y = y+x\"")->required();

    CLI::App* word_eq = app.add_subcommand("word-eq", "word equality in the free quasigroup");
    word_eq->add_option("lhs", term1)->required();
    word_eq->add_option("rhs", term2)->required();
    word_eq->add_flag("--medial", medial, "free medial instead of free T");

    CLI::App* normalize = app.add_subcommand("normalize", "canonical form of a term");
    normalize->add_option("term", term1)->required();
    normalize->add_flag("--medial", medial, "free medial instead of free T");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(file, as_json);
        if (check->parsed()) {
            if (identity_text.empty() && named.empty()) {
                std::cerr << "check needs --identity or --named\n";
                return kExitUsage;
            }
            return cmd_check(file, identity_text, named, budget, as_json);
        }
        if (classify->parsed())
            return cmd_classify(file, max_class, decompose, budget, as_json);
        if (isotope->parsed()) return cmd_isotope(file, iso_a, iso_b, out_path, as_json);
        if (construct->parsed())
            return cmd_construct(kind, group_spec, phi_text, psi_text, c_value, form_text,
                                 out_path, as_json);
        if (derive->parsed()) return cmd_derive(term1, as_json);
        if (word_eq->parsed()) return cmd_word_eq(term1, term2, medial, as_json);
        if (normalize->parsed()) return cmd_normalize(term1, medial, as_json);
        std::cerr << "no subcommand\n";
        return kExitUsage;
    } catch (const CliError& e) {
        std::cerr << e.message << "\n";
        return e.code;
    } catch (const qg::BudgetError& e) {
        std::cerr << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
}
