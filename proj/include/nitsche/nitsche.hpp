#ifndef NITSCHE_NITSCHE_HPP
#define NITSCHE_NITSCHE_HPP

#include "nitsche/errors.hpp"
#include "nitsche/quadrature.hpp"
#include "nitsche/annulus_map.hpp"
#include "nitsche/ahm_io.hpp"
#include "nitsche/circle_means.hpp"
#include "nitsche/nitsche_family.hpp"
#include "nitsche/disk_maps.hpp"
#include "nitsche/quadratic_forms.hpp"
#include "nitsche/identity.hpp"
#include "nitsche/minimal_surface.hpp"
#include "nitsche/random_maps.hpp"
#include "nitsche/csv.hpp"

#endif
