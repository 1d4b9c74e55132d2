#pragma once

namespace netmap {

// Pinned public-suffix snapshot so registrable-domain extraction works offline
// and reproduces byte-identically across machines. Subset of the public suffix
// list (publicsuffix.org), same rule syntax: one rule per line, `*.` wildcard
// labels, `!` exception rules, `//` comments.
inline constexpr const char* kPublicSuffixSnapshot = R"psl(
// generic
com
org
net
edu
gov
mil
int
info
biz
name
pro
mobi
xyz
online
site
news
blog
app
dev
io
co
me
tv
cc
ws

// country-code, single level
us
ca
de
fr
it
es
nl
se
no
fi
dk
pl
cz
ch
at
be
ie
pt
gr
ru
su
ua
by
kz
tr
cn
in
kr
mx
ar
cl
za
eu

// united kingdom
uk
ac.uk
co.uk
gov.uk
ltd.uk
me.uk
net.uk
nhs.uk
org.uk
plc.uk
sch.uk

// australia
au
com.au
net.au
org.au
edu.au
gov.au
asn.au
id.au

// new zealand
nz
ac.nz
co.nz
geek.nz
gen.nz
govt.nz
iwi.nz
maori.nz
net.nz
org.nz
school.nz

// japan
jp
ac.jp
ad.jp
co.jp
ed.jp
go.jp
gr.jp
lg.jp
ne.jp
or.jp

// brazil
br
com.br
net.br
org.br
gov.br
edu.br
blog.br

// russia-adjacent second levels
com.ru
net.ru
org.ru
msk.ru
spb.ru
com.ua
net.ua
org.ua
gov.ua
kiev.ua

// wildcard and exception rules (cook islands), exercising full rule matching
ck
*.ck
!www.ck

// hosting suffixes commonly seen in shared-link corpora
blogspot.com
wordpress.com
github.io
gitlab.io
netlify.app
herokuapp.com
)psl";

} // namespace netmap
