#include "bkw/height.hpp"
#include "bkw/lattice.hpp"
#include "bkw/loops.hpp"
#include "bkw/random_cluster.hpp"
#include "bkw/report.hpp"
#include "bkw/six_vertex.hpp"
#include "bkw/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace bkw;

namespace {

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

BondConfig bonds(const Domain& d, const std::vector<std::uint8_t>& open) {
    if (open.size() != d.primal_edges().size()) throw std::invalid_argument("one entry per primal edge expected");
    BondConfig cfg(d);
    cfg.open = open;
    return cfg;
}

SixVertexConfig arrows(const Domain& d, const std::vector<std::uint8_t>& a) {
    if (a.size() != d.medial_edges().size()) throw std::invalid_argument("one entry per medial edge expected");
    return {&d, a};
}

py::dict height_dict(const HeightFunction& h) {
    py::dict out;
    const auto sites = h.domain->face_sites();
    for (std::size_t s = 0; s < sites.size(); ++s) out[py::make_tuple(sites[s].face.i, sites[s].face.j)] = h.values[s];
    return out;
}

}  // namespace

PYBIND11_MODULE(_bkw, m) {
    m.doc() = "Random-cluster, loop and six-vertex models on even domains";

    py::register_exception<std::length_error>(m, "BudgetExceeded", PyExc_ValueError);

    py::class_<Domain>(m, "Domain")
        .def_static("diamond", [](int i, int j, int radius) { return make_diamond_domain({i, j}, radius); },
                    py::arg("i"), py::arg("j"), py::arg("radius"))
        .def_static("box", &make_box_domain, py::arg("side"))
        .def_static("parse", &parse_domain_spec, py::arg("spec"))
        .def_static("from_vertices",
                    [](const std::vector<std::pair<int, int>>& vs, bool require_even) {
                        std::vector<FaceCoord> faces;
                        for (auto [i, j] : vs) faces.push_back({i, j});
                        return Domain::from_vertices(std::move(faces), require_even);
                    },
                    py::arg("vertices"), py::arg("require_even") = true)
        .def_property_readonly("is_even", &Domain::is_even)
        .def_property_readonly("vertex_count", [](const Domain& d) { return d.vertices().size(); })
        .def_property_readonly("primal_edge_count", [](const Domain& d) { return d.primal_edges().size(); })
        .def_property_readonly("medial_edge_count", [](const Domain& d) { return d.medial_edges().size(); })
        .def_property_readonly("boundary_cycle_length", [](const Domain& d) { return d.boundary_cycle().size(); })
        .def_property_readonly("n2", &Domain::n2)
        .def_property_readonly("vertices", [](const Domain& d) {
            std::vector<std::pair<int, int>> out;
            for (auto f : d.vertices()) out.emplace_back(f.i, f.j);
            return out;
        })
        .def("descriptor", [](const Domain& d) { return to_python(json::parse(d.descriptor_json())); });

    m.def("critical_p", &critical_p, py::arg("q"));
    m.def("coupled_params", [](double q) { return to_python(to_json(verify_coupled_params(q))); }, py::arg("q"));

    m.def("cluster_stats",
          [](const Domain& d, const std::vector<std::uint8_t>& open) {
              const auto s = cluster_stats(bonds(d, open));
              py::dict out;
              out["o"] = s.o;
              out["c"] = s.c;
              out["k_i"] = s.k_i;
              out["k_b"] = s.k_b;
              out["k_dual"] = s.k_dual;
              return out;
          },
          py::arg("domain"), py::arg("open"));
    m.def("fk_weight",
          [](const Domain& d, const std::vector<std::uint8_t>& open, double p, double q, double q_b) {
              return fk_weight(bonds(d, open), FKParams{p, q, q_b});
          },
          py::arg("domain"), py::arg("open"), py::arg("p"), py::arg("q"), py::arg("q_b"));
    m.def("fk_distribution",
          [](const Domain& d, double p, double q, double q_b) { return fk_distribution(d, FKParams{p, q, q_b}); },
          py::arg("domain"), py::arg("p"), py::arg("q"), py::arg("q_b"));

    m.def("loops",
          [](const Domain& d, const std::vector<std::uint8_t>& open) {
              const auto lc = extract_loops(bonds(d, open));
              py::list out;
              for (const auto& l : lc.loops) {
                  py::dict item;
                  item["edges"] = l.edges;
                  item["boundary"] = l.boundary;
                  out.append(item);
              }
              return out;
          },
          py::arg("domain"), py::arg("open"));
    m.def("loop_arrows",
          [](const Domain& d, const std::vector<std::uint8_t>& open, const std::vector<std::int8_t>& xi) {
              return loop_arrows(orient_loops(extract_loops(bonds(d, open)), xi));
          },
          py::arg("domain"), py::arg("open"), py::arg("xi"));

    m.def("six_vertex_configs",
          [](const Domain& d) {
              std::vector<std::vector<std::uint8_t>> out;
              enumerate_6v(d, [&](const SixVertexConfig& c) { out.push_back(c.arrow); });
              return out;
          },
          py::arg("domain"));
    m.def("vertex_types", [](const Domain& d, const std::vector<std::uint8_t>& a) { return vertex_types(arrows(d, a)); },
          py::arg("domain"), py::arg("arrows"));
    m.def("is_valid_6v", [](const Domain& d, const std::vector<std::uint8_t>& a) { return is_valid(arrows(d, a)); },
          py::arg("domain"), py::arg("arrows"));
    m.def("height_from_arrows",
          [](const Domain& d, const std::vector<std::uint8_t>& a, std::pair<int, int> base) {
              return height_dict(height_from_arrows(arrows(d, a), {base.first, base.second}));
          },
          py::arg("domain"), py::arg("arrows"), py::arg("base"));

    m.def("verify_coupling",
          [](const Domain& d, const std::string& backend) {
              CouplingCheckOptions opt;
              if (backend == "float")
                  opt.backend = Backend::Float;
              else if (backend != "symbolic")
                  throw std::invalid_argument("backend must be 'symbolic' or 'float'");
              py::gil_scoped_release release;
              const auto rep = verify_coupling(d, opt);
              py::gil_scoped_acquire acquire;
              return to_python(to_json(rep, false));
          },
          py::arg("domain"), py::arg("backend") = "symbolic");
    m.def("verify_identities",
          [](const Domain& d, int random_pairs, std::uint64_t seed) {
              IdentityCheckOptions opt;
              opt.random_pairs = random_pairs;
              opt.seed = seed;
              return to_python(to_json(verify_identities(d, opt), false));
          },
          py::arg("domain"), py::arg("random_pairs") = 0, py::arg("seed") = 1);
    m.def("holley_check",
          [](const Domain& d, double q, double p, double q_b_lo, double q_b_hi) {
              return to_python(to_json(holley_check(FKParams{p, q, q_b_lo}, FKParams{p, q, q_b_hi}, d)));
          },
          py::arg("domain"), py::arg("q"), py::arg("p"), py::arg("q_b_lo"), py::arg("q_b_hi"));
    m.def("sample",
          [](const Domain& d, double p, double q, double q_b, int sweeps, int burn_in, std::uint64_t seed, bool start_open) {
              py::gil_scoped_release release;
              const auto rep = run_sampler(d, FKParams{p, q, q_b}, sweeps, burn_in, seed, start_open, -1);
              py::gil_scoped_acquire acquire;
              return to_python(to_json(rep));
          },
          py::arg("domain"), py::arg("p"), py::arg("q"), py::arg("q_b"), py::arg("sweeps"), py::arg("burn_in") = 0,
          py::arg("seed") = 1, py::arg("start_open") = false);
    m.def("drift",
          [](double q, double lambda, int box, int samples, int chains, int burn_in, int thin, std::uint64_t seed,
             int workers) {
              DriftOptions opt{q, lambda, box, samples, chains, burn_in, thin, seed, workers};
              py::gil_scoped_release release;
              const auto r = drift_experiment(opt);
              py::gil_scoped_acquire acquire;
              return to_python(drift_summary(r));
          },
          py::arg("q"), py::arg("lambda_"), py::arg("box") = 64, py::arg("samples") = 200, py::arg("chains") = 8,
          py::arg("burn_in") = 200, py::arg("thin") = 5, py::arg("seed") = 1, py::arg("workers") = 1);
}
