#pragma once

#include <ostream>
#include <string>

#include "dsg/benchmarks.hpp"
#include "dsg/engine.hpp"
#include "dsg/instance.hpp"

namespace dsg {

std::string instance_to_string(const Instance& inst);
Instance instance_from_string(const std::string& text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

std::string report_to_string(const BenchmarkReport& rep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Shortest text that reads back to the same double.
std::string format_double(double x);

// Header `t,a,b,r1,r2,v1,v2`, or with a leading `trial` column.
void write_trace_csv(std::ostream& os, const RunTrace& trace, const Instance& inst,
                     bool with_header = true, long trial = -1);

}  // namespace dsg
