namespace planemorph {}
