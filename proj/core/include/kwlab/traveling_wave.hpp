#pragma once

#include "kwlab/spectral.hpp"

namespace kwlab {

struct TravelingWaveOptions {
  double c_max = 16.0;
  int max_iterations = 2000;
  double tolerance = 1e-13;
};

struct TravelingWave {
  SpectralField profile;  // mean-zero, even about x = 0
  double speed = 0.0;
  double residual = 0.0;  // L2 norm of -c phi' - phi''''' + lambda^-2 phi''' + (phi^2)'
  int iterations = 0;
};

/// Petviashvili iteration for the solitary profile moving at speed c (beta must be 1).
TravelingWave traveling_wave(double c, const GridSpec& g, const TravelingWaveOptions& opt = {});

/// L2 norm of the profile equation residual.
double traveling_wave_residual(const SpectralField& phi, double c);

struct ShiftFit {
  double shift = 0.0;
  double error = 0.0;  // ||u - phi(. - shift)|| / ||phi||
};

/// Best translate of phi matching u, searched near the guess.
ShiftFit shift_align(const SpectralField& u, const SpectralField& phi, double guess);

}  // namespace kwlab
