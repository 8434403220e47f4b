#ifndef NOVIKOV_NOVIKOV_HPP
#define NOVIKOV_NOVIKOV_HPP

#include "novikov/error.hpp"
#include "novikov/series.hpp"
#include "novikov/parallel.hpp"
#include "novikov/waveform.hpp"
#include "novikov/bloch.hpp"
#include "novikov/modulation.hpp"
#include "novikov/io.hpp"
#include "novikov/sweep.hpp"

#endif  // NOVIKOV_NOVIKOV_HPP
