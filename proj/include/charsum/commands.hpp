// Command implementations behind the CLI: each returns a process exit code
// (0 ok, 1 failed checks, 2 bad configuration) and writes its outputs plus a
// manifest describing the run.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charsum/spectrum.hpp"

namespace charsum {

struct TailOptions {
    uint64_t p = 200003;
    std::vector<uint32_t> orders = {2};
    uint64_t m = 1;
    int64_t shift = 0;
    SpectrumKind kind = SpectrumKind::midpoint;
    int grid_T = 32;
    double refine_tol = 1e-4;
    double vstep = 0.01;
    std::string out;
    std::string svg;  // optional
    int threads = 0;
};

struct ConstantsOptions {
    std::vector<uint32_t> orders = {2, 3, 4, 5, 6, 7, 8};
    std::string out;
};

struct RandModelOptions {
    uint64_t p = 10007;
    uint32_t d = 2;
    std::vector<double> s_values = {0.0, 1.0, 2.0};
    uint64_t samples = 100000;
    uint64_t seed = 1;
    std::string out;
    int threads = 0;
};

enum class VerifyLevel { quick, full };

int run_tail(const TailOptions& options);
int run_constants(const ConstantsOptions& options);
int run_randmodel(const RandModelOptions& options);
int run_verify(VerifyLevel level, int threads = 0);

// Re-executes the command recorded in a manifest file.
int run_replay(const std::string& manifest_path);

}  // namespace charsum
