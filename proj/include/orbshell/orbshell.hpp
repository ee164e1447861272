#ifndef ORBSHELL_ORBSHELL_HPP_
#define ORBSHELL_ORBSHELL_HPP_

#include "orbshell/base.hpp"
#include "orbshell/capsid.hpp"
#include "orbshell/cyclotomic.hpp"
#include "orbshell/dihedral.hpp"
#include "orbshell/export.hpp"
#include "orbshell/group.hpp"
#include "orbshell/hull.hpp"
#include "orbshell/icosa.hpp"
#include "orbshell/qtau.hpp"
#include "orbshell/rational.hpp"
#include "orbshell/shells.hpp"
#include "orbshell/signed_perm.hpp"

#endif
