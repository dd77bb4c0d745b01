// Per-arc value spectra of f_chi on the unit circle: midpoint magnitudes,
// estimated arc maxima, the auxiliary function g, empirical tail curves, and
// the large-|g| exceptional set.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "charsum/character.hpp"
#include "charsum/dft.hpp"

namespace charsum {

enum class SpectrumKind { midpoint, arcmax };

// values[K] = |f_{chi,a}(e_p(K + x))| / sqrt(p), either at the arc midpoint
// x = 1/2 or maximized over x in [0,1].
struct Spectrum {
    uint64_t p = 0;
    uint32_t d = 0;
    uint32_t m = 0;
    int64_t shift = 0;
    SpectrumKind kind = SpectrumKind::midpoint;
    std::vector<double> values;
    int grid_T = 0;           // arcmax only
    double refine_tol = 0.0;  // arcmax only; <= 0 means grid-only
};

Spectrum midpoint_spectrum(const DirichletCharacter& chi, int64_t shift = 0);

// Grid of T offsets x = t/T per arc, refined per arc by golden-section
// search on |f| (direct evaluations) until the x-interval is narrower than
// refine_tol. Refinement only ever raises values.
Spectrum arc_max_spectrum(const DirichletCharacter& chi, int64_t shift, int grid_T,
                          double refine_tol, int threads = 0);

// g_{chi,K}(x) = i f_chi(z) / ((z^p - 1) tau(chi)), z = e_p(K + x).
struct AuxValue {
    std::complex<double> value;
    double tail_radius = 0.0;  // truncation bound; 0 in exact mode
};

// Exact form; rejects x in {0, 1} where z^p - 1 vanishes. The overload
// without tau computes the Gauss sum on the fly (O(p)).
AuxValue g_aux_exact(const DirichletCharacter& chi, uint64_t K, double x,
                     std::complex<double> tau);
AuxValue g_aux_exact(const DirichletCharacter& chi, uint64_t K, double x);

// Lagrange form truncated to |j| <= window, plus the radius
// sum_{window < |j| < p/2} 1/(2(|j|-1)) bounding the dropped terms.
AuxValue g_aux_truncated(const DirichletCharacter& chi, uint64_t K, double x, uint64_t window);

// g_{chi,K}(1/2) for all K at once (one twisted DFT).
std::vector<std::complex<double>> midpoint_g_values(const DirichletCharacter& chi);

struct TailCurve {
    std::vector<double> v_grid;
    std::vector<double> phi;  // exact counts over p
    uint64_t p = 0;
    uint32_t d = 0;
    uint32_t m = 0;
    SpectrumKind kind = SpectrumKind::midpoint;
    int64_t shift = 0;
};

// phi[i] = #{K : values[K] >= v_grid[i]} / p; v_grid must be increasing.
TailCurve tail_curve(const Spectrum& spectrum, std::span<const double> v_grid);

// 0, step, 2*step, ..., up to ceil(max value).
std::vector<double> default_v_grid(const Spectrum& spectrum, double step = 0.01);

struct ExceptionalSetReport {
    double threshold = 0.0;  // log log p
    uint64_t count = 0;
    std::vector<uint64_t> members;
};

// K with |g_{chi,K}(1/2)| >= log log p.
ExceptionalSetReport exceptional_set(const DirichletCharacter& chi, bool keep_members = false);

}  // namespace charsum
