import numpy as np, mpmath as mp
from math import pi, sqrt, gamma
mp.mp.dps = 40
def leg(n,k,t):
    lam = mp.mpf(n-1)/2
    if n==1: return mp.chebyt(k,t)
    return mp.gegenbauer(k,lam,t)/mp.gegenbauer(k,lam,1)
for (n,k,t) in [(3,50,0.3),(4,100,-0.7),(2,1000,0.123),(5,7,0.9),(6,333,-0.05),(2,10,0)]:
    print("leg",n,k,t, mp.nstr(leg(n,k,mp.mpf(t)),20))
def vol(m): return 2*pi**((m+1)/2)/gamma((m+1)/2)
# exact C_{k,2}: deterministic quadrature over frame manifold
def sph2(deg):
    x,w=np.polynomial.legendre.leggauss(deg//2+2); M=deg+2; ph=2*pi*np.arange(M)/M
    pts=[];wts=[]
    for xi,wi in zip(x,w):
        s=sqrt(1-xi*xi)
        for f in ph: pts.append((s*np.cos(f),s*np.sin(f),xi)); wts.append(wi*2*pi/M)
    return np.array(pts),np.array(wts)
def comp(q):
    u=np.cross(q,[0.3,0.5,0.7]);u/=np.linalg.norm(u);v=np.cross(q,u);return u,v
for k in [1,2,4,8,12]:
    P,W=sph2(2*k+6); M=4*k+8; ph=2*pi*np.arange(M)/M
    push=0; sec=0
    for q,w in zip(P,W):
        u,v=comp(q); p=np.cos(ph)[:,None]*u+np.sin(ph)[:,None]*v
        z=q+1j*p; val=(z[:,0]+1j*z[:,1])**k
        push+=w*abs(val.mean()*2*pi)**2
        sec+=w*(abs(val)**2).mean()*2*pi
    # sec = integral over frame manifold (vol S2 * 2pi total); convert to mean times mass
    mean=sec/(vol(2)*2*pi)
    normsq=sqrt(2)*vol(2)*vol(1)/(2*pi)*mean
    C=sqrt(push/normsq)
    lead=sqrt(1/(2*sqrt(2))*vol(2)*vol(1))*(pi*k)**(-0.25)
    print("C",k,repr(C),repr(C/lead))
