#include "codyn/error.hpp"
#include "codyn/experiment.hpp"
#include "codyn/landscape.hpp"
#include "codyn/substrate.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace codyn;

PYBIND11_MODULE(_codyn, m)
{
    m.doc() = "Codynamic fitness landscapes of coevolutionary minimal substrates";

    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_RuntimeError);

    py::enum_<Task>(m, "Task").value("Maximize", Task::Maximize).value("Minimize", Task::Minimize);
    py::enum_<PopulationLabel>(m, "Population").value("P1", PopulationLabel::P1).value("P2", PopulationLabel::P2);
    py::enum_<Measure>(m, "Measure")
        .value("Dist", Measure::Dist)
        .value("Kld", Measure::Kld)
        .value("Bhatt", Measure::Bhatt);
    py::enum_<DistNorm>(m, "DistNorm").value("RangeSqrtJ", DistNorm::RangeSqrtJ).value("Range", DistNorm::Range);
    py::enum_<BhattMode>(m, "BhattMode")
        .value("Hellinger", BhattMode::Hellinger)
        .value("Verbatim", BhattMode::Verbatim);

    py::class_<InteractionMode>(m, "InteractionMode")
        .def(py::init<Task, Task>(), py::arg("task_p1"), py::arg("task_p2"))
        .def_readwrite("task_p1", &InteractionMode::task_p1)
        .def_readwrite("task_p2", &InteractionMode::task_p2)
        .def_property_readonly("cooperative", &InteractionMode::cooperative)
        .def_static("competitive", &InteractionMode::competitive)
        .def_static("cooperation", &InteractionMode::cooperation, py::arg("task") = Task::Maximize);

    py::class_<ObjectiveKind>(m, "ObjectiveKind")
        .def_static("crisp_linear", &ObjectiveKind::crisp_linear)
        .def_static("smooth_unimodal_pair", &ObjectiveKind::smooth_unimodal_pair)
        .def_static("ridge", &ObjectiveKind::ridge, py::arg("n") = ObjectiveKind::kDefaultRidgeN)
        .def_static("sinusoid", &ObjectiveKind::sinusoid)
        .def_static("parse", &ObjectiveKind::parse, py::arg("name"), py::arg("ridge_n") = ObjectiveKind::kDefaultRidgeN)
        .def_property_readonly("name", [](const ObjectiveKind& k) { return std::string(k.name()); })
        .def_property_readonly("ridge_n", &ObjectiveKind::ridge_n)
        .def_property_readonly("compositional", &ObjectiveKind::compositional)
        .def("__repr__", [](const ObjectiveKind& k) { return "ObjectiveKind(" + std::string(k.name()) + ")"; });

    m.def("eval_objective_test", &eval_objective_test, py::arg("kind"), py::arg("x"));
    m.def("eval_objective_shared", &eval_objective_shared, py::arg("kind"), py::arg("x"), py::arg("y"));
    m.def("score", &score, py::arg("x"), py::arg("s_i"), py::arg("kind"));
    m.def(
        "subjective_test",
        [](double x, const std::vector<double>& sample, const ObjectiveKind& kind) {
            return subjective_test(x, sample, kind);
        },
        py::arg("x"), py::arg("sample"), py::arg("kind"));
    m.def("subjective_compositional", &subjective_compositional, py::arg("x"), py::arg("partner_best"),
          py::arg("kind"));
    m.def(
        "best_of",
        [](const std::vector<double>& genotypes, const std::vector<double>& fitnesses, Task task) {
            return best_of(genotypes, fitnesses, task);
        },
        py::arg("genotypes"), py::arg("fitnesses"), py::arg("task"));

    py::class_<Grid>(m, "Grid")
        .def(py::init<std::vector<double>>())
        .def_property_readonly("points", [](const Grid& g) { return std::vector<double>(g.points().begin(), g.points().end()); })
        .def("__len__", &Grid::size);
    m.def("make_grid", &make_grid, py::arg("lo"), py::arg("hi"), py::arg("count"));

    py::class_<LandscapeProfile>(m, "LandscapeProfile")
        .def_readonly("grid", &LandscapeProfile::grid)
        .def_readonly("values", &LandscapeProfile::values)
        .def_readonly("generation", &LandscapeProfile::generation);
    m.def("objective_profile", &objective_profile, py::arg("kind"), py::arg("grid"), py::arg("task"));
    m.def(
        "subjective_profile_test",
        [](const Grid& grid, const std::vector<std::vector<double>>& samples, const ObjectiveKind& kind) {
            return subjective_profile_test(grid, samples, kind);
        },
        py::arg("grid"), py::arg("samples"), py::arg("kind"));
    m.def("subjective_profile_comp", &subjective_profile_comp, py::arg("grid"), py::arg("partner_best"),
          py::arg("kind"));
    m.def("dist", &dist, py::arg("obj"), py::arg("sub"), py::arg("norm") = DistNorm::RangeSqrtJ);
    m.def("kld", &kld, py::arg("obj"), py::arg("sub"), py::arg("offset") = 0.0, py::arg("epsilon") = 1e-12);
    m.def("bhatt", &bhatt, py::arg("obj"), py::arg("sub"), py::arg("offset") = 0.0,
          py::arg("mode") = BhattMode::Hellinger, py::arg("epsilon") = 1e-12);

    m.def(
        "ci95",
        [](const std::vector<double>& samples) {
            const auto ci = ci95(samples);
            return py::make_tuple(ci.mean, ci.lo, ci.hi);
        },
        py::arg("samples"));

    py::class_<EvoParams>(m, "EvoParams")
        .def(py::init<>())
        .def_readwrite("lambda_", &EvoParams::lambda)
        .def_readwrite("mu", &EvoParams::mu)
        .def_readwrite("tournament_size", &EvoParams::tournament_size)
        .def_readwrite("mutation_prob", &EvoParams::mutation_prob)
        .def_readwrite("mutation_sigma", &EvoParams::mutation_sigma)
        .def_readwrite("generations", &EvoParams::generations);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def_static("defaults", &ExperimentConfig::defaults, py::arg("kind") = ObjectiveKind::smooth_unimodal_pair())
        .def_static("parse", &parse_config, py::arg("text"))
        .def_static("load", [](const std::string& path) { return load_config(path); }, py::arg("path"))
        .def("format", &format_config)
        .def("validate", &ExperimentConfig::validate)
        .def_property(
            "kind", [](const ExperimentConfig& c) { return c.substrate.kind; },
            [](ExperimentConfig& c, const ObjectiveKind& k) { c.substrate.kind = k; })
        .def_readwrite("evo", &ExperimentConfig::evo)
        .def_readwrite("mode", &ExperimentConfig::mode)
        .def_readwrite("runs", &ExperimentConfig::runs)
        .def_readwrite("master_seed", &ExperimentConfig::master_seed)
        .def_readwrite("workers", &ExperimentConfig::workers);

    py::class_<Population>(m, "PopulationState")
        .def_readonly("genotypes", &Population::genotypes)
        .def_readonly("fitnesses", &Population::fitnesses)
        .def_readonly("task", &Population::task)
        .def_readonly("samples", &Population::samples)
        .def_readonly("partner_best", &Population::partner_best)
        .def("best", &Population::best);

    py::class_<CoevoState>(m, "CoevoState")
        .def_readonly("pop1", &CoevoState::pop1)
        .def_readonly("pop2", &CoevoState::pop2)
        .def_readonly("generation", &CoevoState::generation);

    m.def(
        "run_trajectory", [](const ExperimentConfig& c, std::uint64_t seed) { return run_trajectory(c, seed); },
        py::arg("config"), py::arg("seed"));

    py::class_<MeasureSeries>(m, "MeasureSeries")
        .def_readonly("runs", &MeasureSeries::runs)
        .def_property_readonly("generations", &MeasureSeries::generations)
        .def(
            "at",
            [](const MeasureSeries& s, std::size_t k, PopulationLabel pop, Measure measure) {
                const auto& ci = s.at(k, pop, measure);
                return py::make_tuple(ci.mean, ci.lo, ci.hi);
            },
            py::arg("generation"), py::arg("population"), py::arg("measure"))
        .def("rows", [](const MeasureSeries& s) {
            py::list rows;
            for (std::size_t k = 0; k < s.generations(); ++k) {
                for (auto pop : kPopulations) {
                    for (auto meas : kMeasures) {
                        const auto& ci = s.at(k, pop, meas);
                        rows.append(py::make_tuple(k, std::string(to_string(pop)), std::string(to_string(meas)),
                                                   ci.mean, ci.lo, ci.hi));
                    }
                }
            }
            return rows;
        });

    m.def(
        "run_batch",
        [](const ExperimentConfig& c) {
            py::gil_scoped_release release;
            return run_batch(c).series;
        },
        py::arg("config"));
}
