#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "branchcover/census.hpp"
#include "branchcover/charsub.hpp"
#include "branchcover/cli.hpp"
#include "branchcover/cover.hpp"
#include "branchcover/curvesys.hpp"
#include "branchcover/error.hpp"
#include "branchcover/mcglift.hpp"

namespace py = pybind11;
using namespace bcov;

namespace {

SurfaceSig sig_arg(const py::object& o) {
  if (py::isinstance<py::str>(o)) return parse_signature(o.cast<std::string>());
  return o.cast<SurfaceSig>();
}

std::vector<std::string> cycles(const std::vector<Perm>& ps) {
  std::vector<std::string> out;
  for (const Perm& p : ps) out.push_back(to_cycle_string(p));
  return out;
}

std::vector<Automorphism> autos_arg(const py::list& items) {
  std::vector<Automorphism> out;
  for (const auto& it : items) {
    if (py::isinstance<py::str>(it)) {
      out.push_back(parse_automorphism(it.cast<std::string>()));
    } else {
      out.push_back(it.cast<Automorphism>());
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Branched covers of finite-type surfaces";

  auto base_error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base_error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base_error.ptr());

  py::class_<SurfaceSig>(m, "Signature")
      .def(py::init<bool, int, int, int>(), py::arg("orientable"), py::arg("genus"),
           py::arg("punctures") = 0, py::arg("boundary") = 0)
      .def_static("parse", [](const std::string& s) { return parse_signature(s); })
      .def_readwrite("orientable", &SurfaceSig::orientable)
      .def_readwrite("genus", &SurfaceSig::genus)
      .def_readwrite("punctures", &SurfaceSig::punctures)
      .def_readwrite("boundary", &SurfaceSig::boundary)
      .def_property_readonly("euler", [](const SurfaceSig& s) { return euler_characteristic(s); })
      .def_property_readonly("sporadic", [](const SurfaceSig& s) { return is_sporadic(s); })
      .def("__eq__", [](const SurfaceSig& a, const SurfaceSig& b) { return a == b; })
      .def("__hash__", [](const SurfaceSig& s) { return py::hash(py::str(to_string(s))); })
      .def("__str__", [](const SurfaceSig& s) { return to_string(s); })
      .def("__repr__", [](const SurfaceSig& s) { return "Signature('" + to_string(s) + "')"; });

  py::class_<CoverSpec>(m, "Cover")
      .def_static("parse", [](const std::string& text) { return parse_cover(text); })
      .def_static("from_cycles",
                  [](const py::object& base, int branch, int degree,
                     const std::vector<std::string>& monodromy) {
                    std::vector<Perm> ps;
                    for (const auto& c : monodromy) {
                      ps.push_back(parse_cycles(c, static_cast<std::size_t>(degree)));
                    }
                    return CoverSpec(sig_arg(base), branch, degree, std::move(ps));
                  },
                  py::arg("base"), py::arg("branch"), py::arg("degree"), py::arg("monodromy"))
      .def_property_readonly("base", &CoverSpec::base)
      .def_property_readonly("branch_count", &CoverSpec::branch_count)
      .def_property_readonly("degree", &CoverSpec::degree)
      .def_property_readonly("generators",
                             [](const CoverSpec& s) { return s.presentation().generator_names(); })
      .def_property_readonly("monodromy", [](const CoverSpec& s) { return cycles(s.monodromy()); })
      .def("text", [](const CoverSpec& s) { return emit_cover(s); })
      .def("validate",
           [](const CoverSpec& s) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& d : validate(s)) out.emplace_back(d.code, d.message);
             return out;
           })
      .def("total_euler", [](const CoverSpec& s) { return total_euler(s); })
      .def("total", [](const CoverSpec& s) { return classify_total(s); })
      .def("ramification_profile", [](const CoverSpec& s) { return ramification_profile(s); })
      .def("is_fully_ramified", [](const CoverSpec& s) { return is_fully_ramified(s); })
      .def("is_regular", [](const CoverSpec& s) { return is_regular(s); })
      .def("deck_group", [](const CoverSpec& s) { return cycles(deck_group(s)); })
      .def("bh_guaranteed",
           [](const CoverSpec& s) {
             BhVerdict v = bh_guaranteed(s);
             return py::dict(py::arg("guaranteed") = v.guaranteed, py::arg("code") = v.code,
                             py::arg("reason") = v.reason);
           })
      .def("lift_curve",
           [](const CoverSpec& s, const std::string& word) {
             return lift_curve(s, s.presentation().parse_word(word));
           })
      .def("__eq__", [](const CoverSpec& a, const CoverSpec& b) { return a == b; })
      .def("__str__", [](const CoverSpec& s) { return emit_cover(s); });

  m.def("orientable_double_cover", [](const py::object& s) { return orientable_double_cover(sig_arg(s)); });
  m.def("schottky_double", [](const py::object& s) { return schottky_double(sig_arg(s)); });
  m.def("homology_cover", [](const py::object& s, int n) { return homology_cover(sig_arg(s), n); });

  py::class_<Automorphism>(m, "Automorphism")
      .def_static("parse", [](const std::string& text) { return parse_automorphism(text); })
      .def_property_readonly("name", &Automorphism::name)
      .def("text", [](const Automorphism& a) { return emit_automorphism(a); })
      .def("inverse", &Automorphism::inverse)
      .def("apply",
           [](const Automorphism& a, const std::string& w) {
             const Presentation& p = a.presentation();
             return p.format(a.apply(p.parse_word(w)));
           })
      .def("__mul__", [](const Automorphism& a, const Automorphism& b) { return compose(a, b); })
      .def("__str__", [](const Automorphism& a) { return emit_automorphism(a); });

  m.def("preset_classes",
        [](const py::object& s, int branch) { return preset_classes(sig_arg(s), branch); },
        py::arg("signature"), py::arg("branch") = 0);
  m.def("is_liftable",
        [](const CoverSpec& s, const Automorphism& a) -> std::optional<std::string> {
          auto p = is_liftable(s, a);
          if (!p) return std::nullopt;
          return to_cycle_string(*p);
        });
  m.def("is_invariant_under", &is_invariant_under);
  m.def("separation_report", [](const CoverSpec& s, const py::list& classes) {
    SeparationReport r = separation_report(s, autos_arg(classes));
    py::list collisions;
    for (const PairRecord& p : r.pairs) {
      if (p.status == "not-certified") {
        collisions.append(py::make_tuple(p.first, p.second, p.colliding_deck));
      }
    }
    return py::dict(py::arg("pairs") = r.pairs.size(),
                    py::arg("base_separated") = r.base_separated,
                    py::arg("certified") = r.certified, py::arg("collisions") = collisions);
  });

  py::class_<CurveSystem>(m, "CurveSystem")
      .def_static("parse", [](const std::string& text) { return parse_curve_system(text); })
      .def_property_readonly("ambient", &CurveSystem::ambient)
      .def_property_readonly("curves", &CurveSystem::curves)
      .def("text", [](const CurveSystem& c) { return emit_curve_system(c); })
      .def("bigon_count", [](const CurveSystem& c) { return find_bigons(c).size(); })
      .def("minimal_position", [](const CurveSystem& c) { return minimal_position(c); })
      .def("crossings", [](const CurveSystem& c, int i, int j) { return crossing_count(c, i, j); })
      .def("intersection",
           [](const CurveSystem& c, int i, int j) { return geometric_intersection(c, i, j); })
      .def("fills", [](const CurveSystem& c) { return fills(c); })
      .def("one_sided",
           [](const CurveSystem& c, int k) { return curve_sidedness(c, k) == Sidedness::OneSided; })
      .def("alexander_report", [](const CurveSystem& c) {
        AlexanderReport r = alexander_report(c);
        py::dict distinct;
        for (const auto& d : r.distinct) distinct[py::make_tuple(d.first, d.second)] = d.status;
        return py::dict(py::arg("minimal_position") = r.minimal_position,
                        py::arg("no_triple") = r.no_triple, py::arg("fills") = r.fills,
                        py::arg("distinct") = distinct, py::arg("warnings") = r.warnings);
      });

  m.def(
      "census",
      [](const py::list& bases, int max_degree, int max_branch, int min_degree, int workers,
         bool lemma_annulus) {
        CensusQuery q = lemma_annulus ? lemma_annulus_query(max_degree) : CensusQuery{};
        if (!lemma_annulus) {
          for (const auto& b : bases) q.bases.push_back(sig_arg(py::reinterpret_borrow<py::object>(b)));
          q.max_degree = max_degree;
          q.max_branch = max_branch;
        }
        q.min_degree = min_degree;
        q.workers = workers;
        CensusResult r;
        {
          py::gil_scoped_release release;
          r = run_census(q);
        }
        py::list cells;
        for (const CensusCell& c : r.cells) {
          cells.append(py::dict(py::arg("base") = to_string(c.base), py::arg("branch") = c.branch,
                                py::arg("degree") = c.degree, py::arg("covers") = c.covers,
                                py::arg("fully_ramified") = c.fully_ramified,
                                py::arg("regular") = c.regular,
                                py::arg("bh_guaranteed") = c.bh_guaranteed,
                                py::arg("totals") = c.totals));
        }
        return py::dict(py::arg("cells") = cells, py::arg("records") = r.records.size(),
                        py::arg("nodes") = r.nodes, py::arg("complete") = r.complete,
                        py::arg("stop_reason") = r.stop_reason,
                        py::arg("counterexamples") = r.counterexamples);
      },
      py::arg("bases") = py::list(), py::arg("max_degree") = 1, py::arg("max_branch") = 0,
      py::arg("min_degree") = 1, py::arg("workers") = 1, py::arg("lemma_annulus") = false);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });
}
