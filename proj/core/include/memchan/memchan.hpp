/*
 * This file is part of memchan.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MEMCHAN_MEMCHAN_HPP
#define MEMCHAN_MEMCHAN_HPP

#include "memchan/channel.hpp"
#include "memchan/core.hpp"
#include "memchan/device.hpp"
#include "memchan/json_io.hpp"
#include "memchan/repeatability.hpp"
#include "memchan/rng.hpp"
#include "memchan/states.hpp"
#include "memchan/tomography.hpp"

#endif  // MEMCHAN_MEMCHAN_HPP
