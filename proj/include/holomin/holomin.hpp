#pragma once

#include "holomin/curvature.hpp"
#include "holomin/dual_form.hpp"
#include "holomin/io.hpp"
#include "holomin/mesh.hpp"
#include "holomin/planar_net.hpp"
#include "holomin/pnet.hpp"
#include "holomin/stress.hpp"
#include "holomin/vec3.hpp"
#include "holomin/weierstrass.hpp"
