#ifndef AGR_EXPERIMENT_HPP
#define AGR_EXPERIMENT_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "agr/affine_radon.hpp"
#include "agr/csv.hpp"

namespace agr {

enum class Pipeline {
    Forward,
    Dual,
    InvertQR,
    InvertGeneral,
    InvertDualQR,
    InvertDualGeneral,
    Selftest,
};

Pipeline pipeline_from_string(const std::string& s);
std::string pipeline_to_string(Pipeline p);

// A batch experiment: pipeline + phantom + configuration + acceptance
// tolerance. Serializable as a sectioned key = value file so runs are
// archivable.
struct ExperimentSpec {
    Pipeline pipeline = Pipeline::Selftest;
    std::string phantom = "gaussian";
    std::map<std::string, double> phantom_params;
    PipelineConfig cfg;
    std::string output_path;
    double tolerance = 0.1; // per-row, relative to the phantom scale
    int sample_points = 10;

    void validate() const; // inequality checks before any computation
};

// Pipeline-appropriate default budgets (frozen desk-scale instantiations).
ExperimentSpec default_spec(Pipeline p);

// key = value sections: [experiment], [config], [phantom]. '#' comments.
ExperimentSpec parse_spec_text(const std::string& text);
ExperimentSpec parse_spec_file(const std::string& path);

// Human-readable table of every default (the `defaults` subcommand).
std::string defaults_table();

struct RunReport {
    std::vector<ResultRow> rows;
    bool pass = false;
    std::string csv;
};

// Runs the experiment, writes the CSV to spec.output_path when set, and
// reports pass/fail of the per-row tolerance comparisons.
RunReport run(const ExperimentSpec& spec);

} // namespace agr

#endif
