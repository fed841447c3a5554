// pybind11 bindings for the main toolkit operations. Report-shaped results
// come back as JSON strings; the qgtk package turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "qg/classify.hpp"
#include "qg/construct.hpp"
#include "qg/freewords.hpp"
#include "qg/qgio.hpp"
#include "qg/table.hpp"
#include "qg/term.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

qg::WordMode mode_of(bool medial) {
    return medial ? qg::WordMode::Medial : qg::WordMode::FreeT;
}

json check_result_json(const qg::CheckResult& res) {
    json j;
    j["verdict"] = res.holds ? "holds" : "fails";
    if (!res.holds) {
        json cex = json::array();
        for (const auto& [name, value] : res.counterexample)
            cex.push_back({{"var", name}, {"value", value}});
        j["counterexample"] = cex;
    }
    return j;
}

} // namespace

PYBIND11_MODULE(_qgtk, m) {
    m.doc() = "finite and free quasigroup toolkit";

    py::register_exception<qg::TableError>(m, "TableError", PyExc_ValueError);
    py::register_exception<qg::FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<qg::ParseError>(m, "QgParseError", PyExc_ValueError);
    py::register_exception<qg::MissingEqualsError>(m, "MissingEqualsError", PyExc_ValueError);
    py::register_exception<qg::BudgetError>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<qg::BoundError>(m, "BoundError", PyExc_RuntimeError);
    py::register_exception<qg::ConstructError>(m, "ConstructError", PyExc_ValueError);
    py::register_exception<qg::DeriveError>(m, "DeriveError", PyExc_ValueError);
    py::register_exception<qg::ModelError>(m, "ModelError", PyExc_ValueError);

    py::class_<qg::Permutation>(m, "Permutation")
        .def(py::init<std::vector<int>>())
        .def_static("identity", &qg::Permutation::identity)
        .def("__call__", [](const qg::Permutation& p, int x) { return p(x); })
        .def("__len__", &qg::Permutation::size)
        .def("inverse", &qg::Permutation::inverse)
        .def_property_readonly("images", &qg::Permutation::images)
        .def("__eq__", [](const qg::Permutation& a, const qg::Permutation& b) { return a == b; })
        .def("__repr__", [](const qg::Permutation& p) {
            std::string out = "Permutation([";
            for (size_t i = 0; i < p.images().size(); ++i) {
                if (i) out += ", ";
                out += std::to_string(p.images()[i]);
            }
            return out + "])";
        });

    py::class_<qg::QuasigroupTable>(m, "Table")
        .def(py::init(
                 [](const std::vector<std::vector<int>>& rows, const std::string& name) {
                     return qg::QuasigroupTable::from_rows(rows, name);
                 }),
             py::arg("rows"), py::arg("name") = "")
        .def_property_readonly("order", &qg::QuasigroupTable::order)
        .def_property_readonly("name", &qg::QuasigroupTable::name)
        .def("rows",
             [](const qg::QuasigroupTable& t) {
                 std::vector<std::vector<int>> rows(static_cast<size_t>(t.order()));
                 for (int x = 0; x < t.order(); ++x)
                     for (int y = 0; y < t.order(); ++y)
                         rows[static_cast<size_t>(x)].push_back(t.mul(x, y));
                 return rows;
             })
        .def("mul", &qg::QuasigroupTable::mul)
        .def("ldiv", &qg::QuasigroupTable::ldiv)
        .def("rdiv", &qg::QuasigroupTable::rdiv)
        .def("left_translation", &qg::QuasigroupTable::left_translation)
        .def("right_translation", &qg::QuasigroupTable::right_translation)
        .def("principal_isotope", &qg::QuasigroupTable::principal_isotope)
        .def("isotope", &qg::QuasigroupTable::isotope)
        .def("__eq__", [](const qg::QuasigroupTable& a,
                          const qg::QuasigroupTable& b) { return a == b; })
        .def("__repr__", [](const qg::QuasigroupTable& t) {
            return "Table(order=" + std::to_string(t.order()) + ")";
        });

    m.def("read_qg", &qg::read_qg_string, py::arg("text"), py::arg("name") = "");
    m.def("read_qg_file", &qg::read_qg_file, py::arg("path"));
    m.def("write_qg", &qg::write_qg_string, py::arg("table"));

    m.def("analyze_group", [](const qg::QuasigroupTable& t) {
        qg::GroupAnalysis a = qg::analyze_group(t);
        json j;
        j["is_loop"] = a.is_loop;
        j["identity"] = a.identity ? json(*a.identity) : json(nullptr);
        j["is_group"] = a.is_group;
        j["is_abelian"] = a.is_abelian;
        j["nilpotency_class"] = a.nilpotency_class ? json(*a.nilpotency_class) : json(nullptr);
        j["lower_central_series"] = a.lower_central_series;
        return j.dump();
    });

    m.def("enumerate_latin_squares",
          [](int n, int max_order) {
              std::vector<qg::QuasigroupTable> out = qg::all_latin_squares(n, max_order);
              return out;
          },
          py::arg("n"), py::arg("max_order") = 5);
    m.def("random_latin_square", &qg::random_latin_square, py::arg("n"), py::arg("seed"));

    m.def("check_identity",
          [](const qg::QuasigroupTable& t, const std::string& identity, long long budget,
             int u_element) {
              return check_result_json(
                         qg::check_identity(t, qg::parse_identity(identity), budget, u_element))
                  .dump();
          },
          py::arg("table"), py::arg("identity"), py::arg("budget") = 100'000'000,
          py::arg("u_element") = 0);

    m.def("catalog", [] {
        std::vector<std::map<std::string, std::string>> out;
        for (const qg::CatalogEntry& e : qg::catalog())
            out.push_back({{"key", e.key},
                           {"identity", qg::to_string(e.identity)},
                           {"meaning", e.meaning},
                           {"attribution", e.attribution}});
        return out;
    });

    m.def("classify",
          [](const qg::QuasigroupTable& t, int max_class, bool decompose, long long budget) {
              qg::ClassifyOptions opts;
              opts.max_class = max_class;
              opts.decompose = decompose;
              opts.budget = budget;
              return qg::report_to_json(qg::classify(t, opts)).dump();
          },
          py::arg("table"), py::arg("max_class") = 0, py::arg("decompose") = false,
          py::arg("budget") = 100'000'000);

    m.def("quasicommutator",
          [](const qg::QuasigroupTable& t, int u, int v, const std::vector<int>& xs) {
              return qg::quasicommutator(t, u, v, xs);
          },
          py::arg("table"), py::arg("u"), py::arg("v"), py::arg("xs"));
    m.def("check_nilpotent_isotopy",
          [](const qg::QuasigroupTable& t, int n, long long budget) {
              return check_result_json(qg::check_nilpotent_isotopy(t, n, budget)).dump();
          },
          py::arg("table"), py::arg("n"), py::arg("budget") = 100'000'000);
    m.def("check_engel_isotopy",
          [](const qg::QuasigroupTable& t, int n) {
              return check_result_json(qg::check_engel_isotopy(t, n)).dump();
          },
          py::arg("table"), py::arg("n"));

    m.def("derive_identity", [](const std::string& loop_identity) {
        return qg::to_string(qg::derive_identity(qg::parse_loop_identity(loop_identity)));
    });

    m.def("oracle_isotopy", [](const qg::QuasigroupTable& t) {
        qg::IsotopyOracle o = qg::oracle_isotopy(t);
        json j;
        j["group_isotope"] = o.group_isotope;
        j["abelian_isotope"] = o.abelian_isotope;
        j["nilpotency_class"] = o.nilpotency_class ? json(*o.nilpotency_class) : json(nullptr);
        return j.dump();
    });

    m.def("decompose_t", [](const qg::QuasigroupTable& t) {
        std::optional<qg::TDecomposition> dec = qg::decompose_t(t);
        json j;
        if (dec) {
            j["found"] = true;
            j["a"] = dec->a;
            j["b"] = dec->b;
            j["phi"] = dec->phi.images();
            j["psi"] = dec->psi.images();
            j["c"] = dec->c;
        } else {
            j["found"] = false;
        }
        return j.dump();
    });

    m.def("resolve_group", [](const std::string& spec) { return qg::resolve_group(spec); });
    m.def("enumerate_automorphisms", &qg::enumerate_automorphisms, py::arg("group"),
          py::arg("max_order") = 12);
    m.def("linear_quasigroup",
          [](const qg::QuasigroupTable& group, const qg::Permutation& phi,
             const qg::Permutation& psi, int c, const std::string& form) {
              qg::LinearForm f =
                  form == "trailing" ? qg::LinearForm::Trailing : qg::LinearForm::Middle;
              return qg::linear_quasigroup({group, phi, psi, c, f});
          },
          py::arg("group"), py::arg("phi"), py::arg("psi"), py::arg("c") = 0,
          py::arg("form") = "middle");
    m.def("t_quasigroup",
          [](const qg::QuasigroupTable& group, const qg::Permutation& phi,
             const qg::Permutation& psi, int c) {
              return qg::t_quasigroup({group, phi, psi, c, qg::LinearForm::Middle});
          },
          py::arg("group"), py::arg("phi"), py::arg("psi"), py::arg("c") = 0);
    m.def("ch_quasigroup", &qg::ch_quasigroup, py::arg("group"), py::arg("d") = 0);
    m.def("left_distributive_quasigroup", &qg::left_distributive_quasigroup, py::arg("group"),
          py::arg("phi"));

    m.def("normalize_term",
          [](const std::string& term, bool medial) {
              return qg::normalize(qg::tau_transfer(qg::parse_term(term)), mode_of(medial))
                  .display();
          },
          py::arg("term"), py::arg("medial") = false);

    m.def("words_equal",
          [](const std::string& lhs, const std::string& rhs, bool medial) {
              qg::WordsEqualResult res = qg::words_equal(
                  qg::parse_term(lhs), qg::parse_term(rhs), mode_of(medial));
              json j;
              j["equal"] = res.equal;
              j["lhs_canonical"] = res.lhs.display();
              j["rhs_canonical"] = res.rhs.display();
              if (!res.equal) {
                  if (res.certificate) {
                      const qg::SeparationCertificate& cert = *res.certificate;
                      json assignment = json::object();
                      for (const auto& [name, value] : cert.assignment)
                          assignment[name] = value;
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
              return j.dump();
          },
          py::arg("lhs"), py::arg("rhs"), py::arg("medial") = false);
}
